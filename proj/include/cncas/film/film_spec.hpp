#pragma once

#include "cncas/swcnt/chirality.hpp"
#include "cncas/swcnt/electronic.hpp"
#include "cncas/swcnt/interband.hpp"

namespace cncas {

// Geometry and material content of one nanotube-array film.  Negative
// lengths mean "use the convention": delta = 10 R, d = 2 R.
struct FilmSpec {
  Chirality ch;
  double delta_m = -1.0;  // center-to-center intertube spacing
  double d_m = -1.0;      // film thickness
  // Free-standing film in air by default: the delta = 10 R example system
  // then sits inside the dilute regime its derivation assumes.
  double eps_b = 1.0;     // background permittivity inside the film
  double eps_s = 1.0;     // surrounding permittivity
  ElectronicParams ep;
  InterbandModel inter;
};

// Fills defaulted lengths and validates invariants (throws
// std::invalid_argument).  Emits the dilute-regime warning to stderr when
// triggered; all evaluation entry points expect a normalized spec.
FilmSpec normalize_film_spec(FilmSpec fs);

// Tube volume fraction pi R^2 / (delta d); must be in (0, 1).
double volume_fraction(const FilmSpec& fs);

// True when delta - 2R < 5 * eps_b d / (2 eps_s), the operational reading of
// the dilute-regime requirement (warn-only).
bool dilute_warning_triggered(const FilmSpec& fs);

}  // namespace cncas
