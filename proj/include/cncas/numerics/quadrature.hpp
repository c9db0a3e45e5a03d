#pragma once

#include <functional>
#include <vector>

namespace cncas {

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
};

struct AdaptiveOptions {
  double abs_tol = 1e-280;
  double rel_tol = 1e-10;
  int max_intervals = 2000;
};

// Adaptive Gauss-Kronrod (G7/K15) on [a, b].  Subdivision order is
// deterministic: ties in the error queue break on creation index, and the
// final accumulation runs in left-endpoint order.
IntegralResult integrate_adaptive(const std::function<double(double)>& f,
                                  double a, double b,
                                  const AdaptiveOptions& opt = {});

// Integral over [0, inf) via x = scale*(exp(u) - 1), one adaptive pass per
// unit u-panel.  Stops after two consecutive panels fall below
// max(abs_tol, rel_tol*|sum|); u is capped at 60.
IntegralResult integrate_semi_infinite(const std::function<double(double)>& f,
                                       double scale,
                                       const AdaptiveOptions& opt = {});

// Convenience wrapper; throws std::runtime_error when not converged.
double integrate_or_throw(const std::function<double(double)>& f,
                          double a, double b,
                          const AdaptiveOptions& opt = {});

struct PolarOptions {
  // Tolerances for the radial integral, in units of the final result.
  double abs_tol = 1e-280;
  double rel_tol = 1e-9;
  // The angular average splits the period at theta_kinks (angles where the
  // integrand has |theta - a| kinks or one-sided jumps), maps each segment
  // so nodes cluster toward its ends, and applies nested Gauss-Legendre
  // rules.  The rule size is chosen once, by probing a few radii until the
  // level-to-level change drops below max(theta_abs_floor,
  // theta_rel_tol * |average|), and is then held fixed so the radial
  // integrand stays smooth under adaptive refinement.
  double theta_rel_tol = 1e-7;
  double theta_abs_floor = 1e-15;
  std::vector<double> theta_kinks;
  int max_theta_points = 512;
  // True when f(k, theta + pi) == f(k, theta); the average is then taken
  // over [0, pi).
  bool pi_periodic = true;
  // Decay scale of the radial integrand, used by the exp substitution.
  double radial_scale = 1.0;
};

// Computes integral d^2k/(2pi)^2 f(k, theta) over the plane, i.e.
// (1/2pi) * integral_0^inf k <f>_theta dk.  Segment ends are approached but
// never sampled, so |sin(theta - a)| kinks at the declared angles are safe.
IntegralResult integrate_polar_2d(const std::function<double(double, double)>& f,
                                  const PolarOptions& opt = {});

}  // namespace cncas
