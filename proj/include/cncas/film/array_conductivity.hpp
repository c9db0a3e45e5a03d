#pragma once

#include <complex>

#include "cncas/film/film_spec.hpp"

namespace cncas {

// Plasmon frequency of the coupled tube array (rad/s):
//   omega_p^2 = (4 pi e^2 N2D / (m* eps_b d)) *
//               2 k_y R I0(k_y R) K0(k_y R) / (1 + 2 eps_s/(eps_b k_y d)),
// with e^2 = alpha hbar c.  Returns 0 at k_y = 0 by continuity.
double plasma_frequency(double k_y, const FilmSpec& fs);

struct CollectiveCoupling {
  double omega_p = 0.0;  // rad/s
  double K = 0.0;        // 1/m; K * sigma(velocity units) is a rate
};

// K = f_CN m* omega_p^2 d / (e^2 N2D R); m* and N2D cancel, leaving
// K = (4 pi f_CN / (eps_b R)) * h(k_y) with h the dimensionless form factor
// of omega_p^2 above.
double coupling_K(double k_y, const FilmSpec& fs);
double coupling_K_dky(double k_y, const FilmSpec& fs);
CollectiveCoupling collective_coupling(double k_y, const FilmSpec& fs);

// Along-tube array conductivity on the imaginary axis, Gaussian velocity
// units.  intraband = (2 pi R / eps_s delta) sigma_intra F_thermal;
// collective = (eps_b d / 2 pi) xi K sigma_inter / (xi + K sigma_inter),
// the passivity-consistent continuation (denominator positive for xi > 0,
// checked at every evaluation).
struct SigmaYyParts {
  double intraband = 0.0;
  double collective = 0.0;
  double total = 0.0;
};
SigmaYyParts sigma_yy_array_parts(const SpectralPoint& pt, const FilmSpec& fs);
double sigma_yy_array(const SpectralPoint& pt, const FilmSpec& fs);

// Cross-tube response, velocity units: sigma_xx(i xi) = d xi (eps_b - eps_s)/(4 pi).
double sigma_xx_array(double xi, const FilmSpec& fs);

// Real-frequency partners of the same composition (xi -> -i omega), for
// spectra tables.  sigma_xx is purely reactive there.
std::complex<double> sigma_yy_array_real_axis(const SpectralPoint& pt,
                                              const FilmSpec& fs);
std::complex<double> sigma_xx_array_real_axis(double omega,
                                              const FilmSpec& fs);

// Stored-convention (2 pi sigma / c) variants consumed by the tensor layer,
// plus the k_y derivative needed for the torque chain rule.
double sigma_yy_array_tilde(const SpectralPoint& pt, const FilmSpec& fs);
double sigma_yy_array_tilde_dky(const SpectralPoint& pt, const FilmSpec& fs);
double sigma_xx_array_tilde(double xi, const FilmSpec& fs);

}  // namespace cncas
