#include "cncas/film/film_spec.hpp"

#include <cstdio>
#include <stdexcept>

namespace cncas {

double volume_fraction(const FilmSpec& fs) {
  const double R = tube_radius(fs.ch);
  return pi * R * R / (fs.delta_m * fs.d_m);
}

bool dilute_warning_triggered(const FilmSpec& fs) {
  const double R = tube_radius(fs.ch);
  return fs.delta_m - 2.0 * R < 5.0 * fs.eps_b * fs.d_m / (2.0 * fs.eps_s);
}

FilmSpec normalize_film_spec(FilmSpec fs) {
  validate_chirality(fs.ch);
  const double R = tube_radius(fs.ch);
  if (fs.delta_m <= 0.0) fs.delta_m = 10.0 * R;
  if (fs.d_m <= 0.0) fs.d_m = 2.0 * R;
  if (!(fs.eps_b > 0.0) || !(fs.eps_s > 0.0)) {
    throw std::invalid_argument("film: permittivities must be positive");
  }
  if (fs.delta_m < 2.0 * R) {
    throw std::invalid_argument("film: tubes overlap, delta < 2R");
  }
  if (!(fs.ep.tau_s > 0.0) || !(fs.ep.v_fermi > 0.0)) {
    throw std::invalid_argument("film: invalid electronic parameters");
  }
  const double f = volume_fraction(fs);
  if (!(f > 0.0 && f < 1.0)) {
    throw std::invalid_argument("film: volume fraction outside (0, 1)");
  }
  if (dilute_warning_triggered(fs)) {
    std::fprintf(stderr,
                 "warning: film is outside the dilute regime "
                 "(delta - 2R < 5 eps_b d / (2 eps_s))\n");
  }
  return fs;
}

}  // namespace cncas
