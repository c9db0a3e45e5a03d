#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cncas/lifshitz/evaluator.hpp"

namespace cncas {

// Local power-law exponent of |E(D)| on a log-log grid.
struct ScalingResult {
  std::vector<double> distance_m;  // interior grid points
  std::vector<double> exponent;    // p(D) = -d ln|E| / d ln D
  // First distance where p crosses 3.5, reported only when two adjacent
  // interior points bracket the crossing.
  std::optional<double> transition_m;
};

// Centered differences of ln|E| against ln D; exact on pure power laws.
// Requires >= 3 samples, strictly increasing positive distances, and
// energies of one common sign.
ScalingResult local_log_slope(const std::vector<double>& distance_m,
                              const std::vector<double>& energy_J_m2);

struct CrossoverResult {
  bool found = false;
  double distance_m = 0.0;  // root of |E_a| = |E_b|
  double lower_m = 0.0;     // final bisection bracket
  double upper_m = 0.0;
  // (|E_a| - |E_b|) / max(|E_a|, |E_b|) at distance_m.
  double residual = 0.0;
};

// Bisects |energy_a(D)| = |energy_b(D)| inside [lower_m, upper_m] to a
// relative width of rel_tol.  No root is invented: when the endpoint signs
// of the difference agree the result has found = false and residual holds
// the relative gap at upper_m.
CrossoverResult crossover_distance(const std::function<double(double)>& energy_a,
                                   const std::function<double(double)>& energy_b,
                                   double lower_m, double upper_m,
                                   double rel_tol = 1e-3);

// Distance where the zero-point energy of the sheet pair matches the
// thermal closed form at temperature_K.  Larger temperatures move the
// crossover inward.  opt.rel_tol bounds each energy evaluation; the mode
// and want_torque fields are overridden.
CrossoverResult quantum_thermal_crossover(const Sheet& a, const Sheet& b,
                                          double temperature_K, double lower_m,
                                          double upper_m,
                                          EvaluationOptions opt = {});

// Smallest grid distance past which f changes sign, refined by bisection
// to relative width rel_tol; an exact zero at a grid point is returned as
// is.  Empty when every grid value shares one sign.
std::optional<double> first_sign_change(const std::function<double(double)>& f,
                                        const std::vector<double>& distance_m,
                                        double rel_tol = 1e-3);

// First distance on the grid where the torque between the two films flips
// sign, at fixed axis misalignment phi_rad.  opt selects the spectral mode
// and temperature; want_torque is forced on.
std::optional<double> torque_phase_flip(const FilmSpec& film_a,
                                        const FilmSpec& film_b, double phi_rad,
                                        const std::vector<double>& distance_m,
                                        EvaluationOptions opt = {});

struct SinFitResult {
  double amplitude = 0.0;          // least-squares A in A sin(2 phi)
  double residual_fraction = 0.0;  // rms(torque - A sin 2phi) / rms(torque)
};

// Plain least squares of torque samples against sin(2 phi).  Requires at
// least 8 samples spanning most of [0, pi).  All-zero input fits (0, 0).
SinFitResult fit_sin2phi(const std::vector<double>& phi_rad,
                         const std::vector<double>& torque);

}  // namespace cncas
