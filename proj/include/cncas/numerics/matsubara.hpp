#pragma once

#include <functional>

namespace cncas {

struct MatsubaraSpec {
  double temperature_K = 300.0;
  // Truncation: stop once |t_n| <= max(absolute_floor,
  // tail_tolerance*|partial sum|) and n >= min_terms.  Callers that know the
  // physical decay scale raise min_terms so a slowly varying prefix cannot
  // trigger a premature stop.
  double tail_tolerance = 1e-8;
  int min_terms = 1;
  int max_terms = 400000;
  double absolute_floor = 0.0;
};

struct MatsubaraResult {
  double value = 0.0;          // k_B T * (t_0/2 + sum_{n>=1} t_n)
  int terms_used = 0;          // highest n evaluated
  bool converged = false;
  double tail_estimate = 0.0;  // geometric bound on the dropped remainder
};

// Evaluates k_B T * (t(0)/2 + sum_{n>=1} t(xi_n, n)) with
// xi_n = 2 pi n k_B T / hbar.  term receives (xi_n, n).
MatsubaraResult matsubara_sum(const std::function<double(double, int)>& term,
                              const MatsubaraSpec& spec);

// n-th Matsubara frequency in rad/s.
double matsubara_frequency(double temperature_K, int n);

}  // namespace cncas
