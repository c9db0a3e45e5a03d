#include "cncas/film/array_conductivity.hpp"

#include <cmath>
#include <stdexcept>

#include "cncas/numerics/bessel.hpp"
#include "cncas/swcnt/interband.hpp"
#include "cncas/swcnt/intraband.hpp"

namespace cncas {
namespace {

// Dimensionless form factor of the nonlocal plasma frequency and its k_y
// derivative.
double form_factor(double k_y, const FilmSpec& fs) {
  if (k_y == 0.0) return 0.0;
  const double R = tube_radius(fs.ch);
  const double x = k_y * R;
  const double num = 2.0 * x * bessel_i0(x) * bessel_k0(x);
  const double den = 1.0 + 2.0 * fs.eps_s / (fs.eps_b * k_y * fs.d_m);
  return num / den;
}

double form_factor_dky(double k_y, const FilmSpec& fs) {
  if (k_y == 0.0) {
    // h ~ -2 k R ln(k R) * (eps_b d k / 2 eps_s): both factors vanish.
    return 0.0;
  }
  const double R = tube_radius(fs.ch);
  const double x = k_y * R;
  const double i0 = bessel_i0(x), k0 = bessel_k0(x);
  const double i1 = bessel_i1(x), k1 = bessel_k1(x);
  const double num = 2.0 * x * i0 * k0;
  const double dnum = 2.0 * R * (i0 * k0 + x * (i1 * k0 - i0 * k1));
  const double a = 2.0 * fs.eps_s / (fs.eps_b * fs.d_m);
  const double den = 1.0 + a / k_y;
  const double dden = -a / (k_y * k_y);
  return (dnum * den - num * dden) / (den * den);
}

void require_normalized(const FilmSpec& fs) {
  if (!(fs.delta_m > 0.0) || !(fs.d_m > 0.0)) {
    throw std::invalid_argument("film spec not normalized");
  }
}

}  // namespace

double plasma_frequency(double k_y, const FilmSpec& fs) {
  require_normalized(fs);
  if (!(k_y >= 0.0)) {
    throw std::invalid_argument("plasma_frequency: k_y must be >= 0");
  }
  const double w2 = 4.0 * pi * e2_gauss * fs.ep.n2d_m2 /
                    (fs.ep.m_star_me * electron_mass * fs.eps_b * fs.d_m) *
                    form_factor(k_y, fs);
  return std::sqrt(w2);
}

double coupling_K(double k_y, const FilmSpec& fs) {
  require_normalized(fs);
  if (!(k_y >= 0.0)) {
    throw std::invalid_argument("coupling_K: k_y must be >= 0");
  }
  const double R = tube_radius(fs.ch);
  return 4.0 * pi * volume_fraction(fs) / (fs.eps_b * R) * form_factor(k_y, fs);
}

double coupling_K_dky(double k_y, const FilmSpec& fs) {
  require_normalized(fs);
  const double R = tube_radius(fs.ch);
  return 4.0 * pi * volume_fraction(fs) / (fs.eps_b * R) *
         form_factor_dky(k_y, fs);
}

CollectiveCoupling collective_coupling(double k_y, const FilmSpec& fs) {
  return {plasma_frequency(k_y, fs), coupling_K(k_y, fs)};
}

SigmaYyParts sigma_yy_array_parts(const SpectralPoint& pt, const FilmSpec& fs) {
  require_normalized(fs);
  if (pt.axis != FrequencyAxis::imaginary) {
    throw std::invalid_argument("sigma_yy_array: expects an imaginary-axis point");
  }
  const double xi = pt.frequency;
  const double R = tube_radius(fs.ch);

  SigmaYyParts parts;
  const double thermal =
      pt.temperature_K > 0.0
          ? thermal_intra_factor(pt.k_y, pt.temperature_K, fs.ep.mu_eV,
                                 fs.ep.v_fermi)
          : 1.0;
  parts.intraband = 2.0 * pi * R / (fs.eps_s * fs.delta_m) *
                    sigma_intra(pt, fs.ch, fs.ep) * thermal;

  if (xi > 0.0) {
    const double ks =
        coupling_K(pt.k_y, fs) *
        sigma_inter_imag_axis(pt, fs.ch, fs.ep, fs.inter);  // rate
    const double den = xi + ks;
    if (!(den > 0.0)) {
      throw std::runtime_error(
          "sigma_yy_array: collective denominator is not positive; "
          "continuation convention violated");
    }
    parts.collective = fs.eps_b * fs.d_m / (2.0 * pi) * xi * ks / den;
  }
  parts.total = parts.intraband + parts.collective;
  return parts;
}

double sigma_yy_array(const SpectralPoint& pt, const FilmSpec& fs) {
  return sigma_yy_array_parts(pt, fs).total;
}

double sigma_xx_array(double xi, const FilmSpec& fs) {
  require_normalized(fs);
  if (!(xi >= 0.0)) {
    throw std::invalid_argument("sigma_xx_array: xi must be >= 0");
  }
  return fs.d_m * xi * (fs.eps_b - fs.eps_s) / (4.0 * pi);
}

std::complex<double> sigma_yy_array_real_axis(const SpectralPoint& pt,
                                              const FilmSpec& fs) {
  require_normalized(fs);
  if (pt.axis != FrequencyAxis::real) {
    throw std::invalid_argument(
        "sigma_yy_array_real_axis: expects a real-axis point");
  }
  const double omega = pt.frequency;
  const double R = tube_radius(fs.ch);

  const double thermal =
      pt.temperature_K > 0.0
          ? thermal_intra_factor(pt.k_y, pt.temperature_K, fs.ep.mu_eV,
                                 fs.ep.v_fermi)
          : 1.0;
  std::complex<double> out =
      2.0 * pi * R / (fs.eps_s * fs.delta_m) *
      sigma_intra_real_axis(pt.k_y, omega, fs.ch, fs.ep) * thermal;

  if (omega > 0.0) {
    const std::complex<double> ks =
        coupling_K(pt.k_y, fs) *
        sigma_inter_real_axis(pt, fs.ch, fs.ep, fs.inter);
    if (ks != 0.0) {
      const std::complex<double> miw(0.0, -omega);
      out += fs.eps_b * fs.d_m / (2.0 * pi) * miw * ks / (miw + ks);
    }
  }
  return out;
}

std::complex<double> sigma_xx_array_real_axis(double omega,
                                              const FilmSpec& fs) {
  require_normalized(fs);
  if (!(omega >= 0.0)) {
    throw std::invalid_argument("sigma_xx_array_real_axis: omega must be >= 0");
  }
  return std::complex<double>(0.0, -omega) * fs.d_m * (fs.eps_b - fs.eps_s) /
         (4.0 * pi);
}

double sigma_yy_array_tilde(const SpectralPoint& pt, const FilmSpec& fs) {
  return 2.0 * pi / c_light * sigma_yy_array(pt, fs);
}

double sigma_yy_array_tilde_dky(const SpectralPoint& pt, const FilmSpec& fs) {
  require_normalized(fs);
  const double xi = pt.frequency;
  const double R = tube_radius(fs.ch);

  double thermal = 1.0, thermal_dky = 0.0;
  if (pt.temperature_K > 0.0) {
    thermal = thermal_intra_factor(pt.k_y, pt.temperature_K, fs.ep.mu_eV,
                                   fs.ep.v_fermi);
    thermal_dky = thermal_intra_factor_dky(pt.k_y, pt.temperature_K,
                                           fs.ep.mu_eV, fs.ep.v_fermi);
  }
  const double intra = sigma_intra_tilde(pt.k_y, xi, fs.ch, fs.ep);
  const double intra_dky = sigma_intra_tilde_dky(pt.k_y, xi, fs.ch, fs.ep);
  double out = 2.0 * pi * R / (fs.eps_s * fs.delta_m) *
               (intra_dky * thermal + intra * thermal_dky);

  if (xi > 0.0) {
    const double sig = sigma_inter_imag_axis(pt, fs.ch, fs.ep, fs.inter);
    const double ks = coupling_K(pt.k_y, fs) * sig;
    const double dks = coupling_K_dky(pt.k_y, fs) * sig;
    const double den = xi + ks;
    out += fs.eps_b * fs.d_m / c_light * xi * xi * dks / (den * den);
  }
  return out;
}

double sigma_xx_array_tilde(double xi, const FilmSpec& fs) {
  return fs.d_m * xi * (fs.eps_b - fs.eps_s) / (2.0 * c_light);
}

}  // namespace cncas
