#pragma once

#include <complex>

#include "cncas/swcnt/chirality.hpp"
#include "cncas/swcnt/electronic.hpp"

namespace cncas {

// Single-tube intraband surface conductivity on the imaginary axis, in
// Gaussian velocity units:
//   sigma = (2 alpha c v_F / pi^2 R) * g / (g^2 + (v_F k_y)^2), g = xi + 1/tau.
// Positive, decreasing in xi and in k_y.
double sigma_intra(const SpectralPoint& pt, const Chirality& ch,
                   const ElectronicParams& ep);

// Same quantity in the stored dimensionless convention 2 pi sigma / c.
double sigma_intra_tilde(double k_y, double xi, const Chirality& ch,
                         const ElectronicParams& ep);

// Partial derivative of sigma_intra_tilde with respect to k_y.
double sigma_intra_tilde_dky(double k_y, double xi, const Chirality& ch,
                             const ElectronicParams& ep);

// Real-frequency counterpart (Gaussian velocity units), for diagnostics and
// dispersion checks: sigma(omega) with g -> 1/tau - i omega.
std::complex<double> sigma_intra_real_axis(double k_y, double omega,
                                           const Chirality& ch,
                                           const ElectronicParams& ep);

// Finite-temperature multiplier of the intraband conductivity.  Stable
// evaluation of
//   F = (k_B T / u) * ln[(1 + e^{mu/k_B T}) / (1 + e^{(mu-u)/k_B T})],
// u = hbar v_F k_y.  F -> 1 as T -> 0 when u < mu, F -> mu/u when u > mu,
// and F is smooth at u = mu.  Always in (0, 1] for mu > 0.
double thermal_intra_factor(double k_y, double T, double mu_eV,
                            double v_fermi = c_light / 300.0);

// Partial derivative of the factor with respect to k_y.
double thermal_intra_factor_dky(double k_y, double T, double mu_eV,
                                double v_fermi = c_light / 300.0);

}  // namespace cncas
