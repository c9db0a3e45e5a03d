#include "cncas/numerics/matsubara.hpp"

#include <cmath>
#include <stdexcept>

#include "cncas/constants.hpp"

namespace cncas {

double matsubara_frequency(double temperature_K, int n) {
  return 2.0 * pi * n * k_boltzmann * temperature_K / hbar;
}

MatsubaraResult matsubara_sum(const std::function<double(double, int)>& term,
                              const MatsubaraSpec& spec) {
  if (!(spec.temperature_K > 0.0)) {
    throw std::invalid_argument("matsubara_sum: temperature must be > 0");
  }
  MatsubaraResult out;
  double partial = 0.5 * term(0.0, 0);
  double prev_mag = std::abs(partial);
  int growth_streak = 0;
  int n = 0;
  for (n = 1; n <= spec.max_terms; ++n) {
    const double t = term(matsubara_frequency(spec.temperature_K, n), n);
    partial += t;
    const double mag = std::abs(t);
    const double cutoff =
        std::max(spec.absolute_floor, spec.tail_tolerance * std::abs(partial));
    if (n >= spec.min_terms && mag <= cutoff) {
      // Geometric extrapolation of the remainder from the last ratio.
      if (prev_mag > 0.0 && mag < prev_mag) {
        const double r = mag / prev_mag;
        out.tail_estimate = mag * r / (1.0 - r);
      } else {
        out.tail_estimate = mag;
      }
      out.converged = true;
      break;
    }
    if (mag >= prev_mag && mag > spec.absolute_floor) {
      // Long stretches of non-decreasing terms past the physical decay
      // scale mean the tolerance cannot be met.
      if (++growth_streak > 2000 && n > spec.min_terms) break;
    } else {
      growth_streak = 0;
    }
    prev_mag = mag;
  }
  out.terms_used = std::min(n, spec.max_terms);
  out.value = k_boltzmann * spec.temperature_K * partial;
  return out;
}

}  // namespace cncas
