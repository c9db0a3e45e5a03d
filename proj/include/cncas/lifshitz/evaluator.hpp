#pragma once

#include <vector>

#include "cncas/film/film_spec.hpp"
#include "cncas/lifshitz/fresnel.hpp"

namespace cncas {

// One reflecting sheet of the cavity.  Implementations return the stored
// units conductivity tensor in the incidence frame (x along k_perp) for an
// in-plane wavevector of magnitude k at lab angle theta, imaginary
// frequency xi, temperature T, plus its derivative with respect to the
// sheet's own orientation angle.
class Sheet {
 public:
  virtual ~Sheet() = default;
  virtual ConductivityTensor tensor(double k, double theta, double xi,
                                    double temperature_K) const = 0;
  virtual ConductivityTensor tensor_dangle(double k, double theta, double xi,
                                           double temperature_K) const = 0;
  // Lab angles (mod pi) where the tensor has |sin| kinks in theta; the
  // k-plane quadrature splits its angular rule there.
  virtual std::vector<double> theta_kinks() const { return {}; }
};

// Nanotube-array film whose tube axis points along the lab y axis rotated
// by axis_angle.  The tensor is the rotated film tensor evaluated at the
// wavevector component along the tubes, k |sin(theta - axis_angle)|.
class FilmSheet final : public Sheet {
 public:
  FilmSheet(FilmSpec fs, double axis_angle_rad);
  ConductivityTensor tensor(double k, double theta, double xi,
                            double temperature_K) const override;
  ConductivityTensor tensor_dangle(double k, double theta, double xi,
                                   double temperature_K) const override;
  std::vector<double> theta_kinks() const override { return {angle_}; }
  const FilmSpec& film() const { return fs_; }
  double axis_angle() const { return angle_; }

 private:
  FilmSpec fs_;
  double angle_;
};

// Direction-independent sheet with a constant stored-units conductivity.
// Large values approximate an ideal metal.
class IsotropicSheet final : public Sheet {
 public:
  explicit IsotropicSheet(double s_tilde);
  ConductivityTensor tensor(double k, double theta, double xi,
                            double temperature_K) const override;
  ConductivityTensor tensor_dangle(double k, double theta, double xi,
                                   double temperature_K) const override;

 private:
  double s_;
};

enum class SpectralMode { matsubara, quantum, thermal };

struct EvaluationOptions {
  SpectralMode mode = SpectralMode::matsubara;
  // Matsubara/thermal: sets the frequency grid and the sheet response.
  // Quantum: the measure stays the zero-point integral, the temperature
  // reaches only the sheets (0 gives the fully cold response).
  double temperature_K = 300.0;
  bool want_torque = false;
  // Relative target for each spectral term's k-plane integral; the final
  // energy is accurate to roughly this level.
  double rel_tol = 1e-7;
  int max_terms = 400000;
  // Cross-checks the analytic n = 0 term against small-kappa quadrature and
  // warns on stderr when they disagree.
  bool debug_checks = false;
};

struct LifshitzResult {
  double energy = 0.0;  // J/m^2, negative for attraction
  double torque = 0.0;  // N m per m^2, torque = -dE/dphi
  int terms_used = 0;   // Matsubara terms; 0 for closed forms
  bool converged = true;
};

// Ideal-metal quantum energy -pi^2 hbar c / (720 D^3).
double ideal_metal_energy(double distance_m);

// High-temperature closed form -zeta(3) k_B T / (16 pi D^2).
double thermal_limit_energy(double distance_m, double temperature_K);

// ln det(1 - x R_a R_b) at one point of the k plane; x = exp(-2 D q),
// q^2 = kappa^2 + k^2.  Integrated over d^2k/(2pi)^2 and summed over
// frequencies this gives the energy per unit area.
double energy_integrand(const Sheet& a, const Sheet& b, double distance_m,
                        double kappa, double temperature_K, double k,
                        double theta);

// x tr[(1 - x R_a R_b)^{-1} R_a dR_b/dphi]; same measure gives the torque.
double torque_integrand(const Sheet& a, const Sheet& b, double distance_m,
                        double kappa, double temperature_K, double k,
                        double theta);

// dR/dphi of one sheet's reflection matrix with respect to its orientation
// angle, at fixed wavevector and frequency.
Mat2 reflection_derivative(const Sheet& sh, double k, double theta, double xi,
                           double temperature_K, double kappa);

LifshitzResult casimir_energy(const Sheet& a, const Sheet& b,
                              double distance_m, const EvaluationOptions& opt);

// casimir_energy with want_torque forced on.
LifshitzResult casimir_torque(const Sheet& a, const Sheet& b,
                              double distance_m, EvaluationOptions opt);

}  // namespace cncas
