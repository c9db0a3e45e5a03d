#pragma once

#include "cncas/constants.hpp"

namespace cncas {

// Single-tube electronic parameters.  m_star and n2d enter only through the
// nonlocal plasma frequency; they cancel exactly in the collective coupling
// that the energy integrand consumes, so their absolute values affect
// diagnostics only.
struct ElectronicParams {
  double tau_s = hbar / (6.61e-3 * electron_volt);  // relaxation time
  double v_fermi = c_light / 300.0;                 // m/s
  double mu_eV = 0.5;                               // chemical potential
  double m_star_me = 0.1;                           // effective mass / m_e
  double n2d_m2 = 1e18;                             // surface electron density
  double gamma0_eV = 2.7;                           // nearest-neighbor hopping
};

enum class FrequencyAxis { imaginary, real };

// Evaluation point of a conductivity: wavenumber along the tube axis,
// frequency on one tagged axis, temperature.
struct SpectralPoint {
  double k_y = 0.0;          // m^-1, >= 0
  double frequency = 0.0;    // rad/s; xi when imaginary, omega when real
  FrequencyAxis axis = FrequencyAxis::imaginary;
  double temperature_K = 0.0;
};

inline SpectralPoint imaginary_point(double k_y, double xi, double T) {
  return {k_y, xi, FrequencyAxis::imaginary, T};
}

inline SpectralPoint real_point(double k_y, double omega, double T) {
  return {k_y, omega, FrequencyAxis::real, T};
}

}  // namespace cncas
