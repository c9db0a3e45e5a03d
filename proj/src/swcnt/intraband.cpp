#include "cncas/swcnt/intraband.hpp"

#include <cmath>
#include <stdexcept>

namespace cncas {
namespace {

double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x > 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void check_point(double k_y, double xi, double tau) {
  if (!(k_y >= 0.0)) throw std::invalid_argument("sigma_intra: k_y must be >= 0");
  if (!(xi >= 0.0)) throw std::invalid_argument("sigma_intra: xi must be >= 0");
  if (!(tau > 0.0)) throw std::invalid_argument("sigma_intra: tau must be > 0");
}

}  // namespace

double sigma_intra(const SpectralPoint& pt, const Chirality& ch,
                   const ElectronicParams& ep) {
  if (pt.axis != FrequencyAxis::imaginary) {
    throw std::invalid_argument("sigma_intra: expects an imaginary-axis point");
  }
  return c_light / (2.0 * pi) *
         sigma_intra_tilde(pt.k_y, pt.frequency, ch, ep);
}

double sigma_intra_tilde(double k_y, double xi, const Chirality& ch,
                         const ElectronicParams& ep) {
  check_point(k_y, xi, ep.tau_s);
  const double R = tube_radius(ch);
  const double g = xi + 1.0 / ep.tau_s;
  const double w = ep.v_fermi * k_y;
  return 4.0 * fine_structure * ep.v_fermi / (pi * R) * g / (g * g + w * w);
}

double sigma_intra_tilde_dky(double k_y, double xi, const Chirality& ch,
                             const ElectronicParams& ep) {
  check_point(k_y, xi, ep.tau_s);
  const double R = tube_radius(ch);
  const double g = xi + 1.0 / ep.tau_s;
  const double w = ep.v_fermi * k_y;
  const double den = g * g + w * w;
  return 4.0 * fine_structure * ep.v_fermi / (pi * R) * g *
         (-2.0 * w * ep.v_fermi) / (den * den);
}

std::complex<double> sigma_intra_real_axis(double k_y, double omega,
                                           const Chirality& ch,
                                           const ElectronicParams& ep) {
  check_point(k_y, 0.0, ep.tau_s);
  const double R = tube_radius(ch);
  const std::complex<double> g(1.0 / ep.tau_s, -omega);
  const double w = ep.v_fermi * k_y;
  return 2.0 * fine_structure * c_light * ep.v_fermi / (pi * pi * R) * g /
         (g * g + w * w);
}

double thermal_intra_factor(double k_y, double T, double mu_eV,
                            double v_fermi) {
  if (!(T > 0.0)) throw std::invalid_argument("thermal_intra_factor: T must be > 0");
  if (!(k_y >= 0.0)) {
    throw std::invalid_argument("thermal_intra_factor: k_y must be >= 0");
  }
  const double t = k_boltzmann * T / electron_volt;  // k_B T in eV
  const double u = hbar_eVs * v_fermi * k_y;         // hbar v_F k_y in eV
  const double a = mu_eV / t;
  if (u / t < 1e-6) {
    const double s = sigmoid(a);
    return s - 0.5 * (u / t) * s * (1.0 - s);
  }
  return (t / u) * (softplus(a) - softplus(a - u / t));
}

double thermal_intra_factor_dky(double k_y, double T, double mu_eV,
                                double v_fermi) {
  if (!(T > 0.0)) throw std::invalid_argument("thermal_intra_factor: T must be > 0");
  const double t = k_boltzmann * T / electron_volt;
  const double u = hbar_eVs * v_fermi * k_y;
  double dF_du;  // per eV
  if (u / t < 1e-6) {
    const double s = sigmoid(mu_eV / t);
    dF_du = -0.5 / t * s * (1.0 - s);
  } else {
    const double F = thermal_intra_factor(k_y, T, mu_eV, v_fermi);
    dF_du = (sigmoid((mu_eV - u) / t) - F) / u;
  }
  return dF_du * hbar_eVs * v_fermi;
}

}  // namespace cncas
