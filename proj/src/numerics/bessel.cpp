#include "cncas/numerics/bessel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cncas/constants.hpp"
#include "cncas/numerics/quadrature.hpp"

// Branch layout.  I: power series up to x = 15 (all-positive terms, no
// cancellation), large-x asymptotic beyond.  K: log series up to x = 4,
// the integral representation on (4, 13) where the series cancels and the
// asymptotic is still short of full precision, asymptotic from x = 13.

namespace cncas {
namespace {

constexpr double kOverflowArg = 700.0;

double i_series(double x, int nu) {
  const double q = 0.25 * x * x;
  double term = (nu == 0) ? 1.0 : 0.5 * x;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (k + nu));
    sum += term;
    if (term < sum * std::numeric_limits<double>::epsilon()) break;
  }
  return sum;
}

// Asymptotic sum_k c_k with c_0 = 1 and
// c_k = c_{k-1} * s * ((2k-1)^2 - 4 nu^2) / (8 k x), s = +1 for I, -1 for K.
double asymptotic_tail(double x, int nu, double sign) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  double prev_mag = std::numeric_limits<double>::max();
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= sign * (odd * odd - mu) / (8.0 * k * x);
    const double mag = std::abs(term);
    if (mag >= prev_mag) break;  // divergent tail begins
    sum += term;
    prev_mag = mag;
    if (mag < std::abs(sum) * std::numeric_limits<double>::epsilon()) break;
  }
  return sum;
}

double i_asymptotic(double x, int nu) {
  return std::exp(x) / std::sqrt(2.0 * pi * x) * asymptotic_tail(x, nu, 1.0);
}

double k_asymptotic(double x, int nu) {
  return std::sqrt(pi / (2.0 * x)) * std::exp(-x) * asymptotic_tail(x, nu, -1.0);
}

// K_nu(x) = integral_0^inf exp(-x cosh t) cosh(nu t) dt.
double k_integral(double x, int nu) {
  const double t_max = std::acosh(745.0 / x);
  const auto integrand = [x, nu](double t) {
    const double ch = std::cosh(t);
    return std::exp(-x * ch) * (nu == 0 ? 1.0 : std::cosh(t));
  };
  AdaptiveOptions opt;
  opt.rel_tol = 1e-14;
  opt.abs_tol = 1e-300;
  return integrate_or_throw(integrand, 0.0, t_max, opt);
}

double k0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;  // q^k / (k!)^2 at k = 0
  double harmonic = 0.0;
  double sum = 0.0;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    const double add = harmonic * term;
    sum += add;
    if (add < (std::abs(sum) + 1.0) * std::numeric_limits<double>::epsilon()) {
      break;
    }
  }
  return -(std::log(0.5 * x) + euler_gamma) * i_series(x, 0) + sum;
}

double k1_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;  // q^k / (k! (k+1)!) at k = 0
  double h_k = 0.0;
  double h_k1 = 1.0;
  double sum = (h_k + h_k1 - 2.0 * euler_gamma) * term;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<double>(k) * (k + 1));
    h_k += 1.0 / k;
    h_k1 += 1.0 / (k + 1);
    const double add = (h_k + h_k1 - 2.0 * euler_gamma) * term;
    sum += add;
    if (std::abs(add) <
        (std::abs(sum) + 1.0) * std::numeric_limits<double>::epsilon()) {
      break;
    }
  }
  return std::log(0.5 * x) * i_series(x, 1) + 1.0 / x - 0.25 * x * sum;
}

}  // namespace

double bessel_i0(double x) {
  if (x < 0.0) throw std::domain_error("bessel_i0: x must be >= 0");
  if (x > kOverflowArg) throw std::overflow_error("bessel_i0: overflow");
  return (x <= 15.0) ? i_series(x, 0) : i_asymptotic(x, 0);
}

double bessel_i1(double x) {
  if (x < 0.0) throw std::domain_error("bessel_i1: x must be >= 0");
  if (x > kOverflowArg) throw std::overflow_error("bessel_i1: overflow");
  return (x <= 15.0) ? i_series(x, 1) : i_asymptotic(x, 1);
}

double bessel_k0(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k0: x must be > 0");
  if (x >= 740.0) return 0.0;
  if (x <= 4.0) return k0_series(x);
  if (x < 13.0) return k_integral(x, 0);
  return k_asymptotic(x, 0);
}

double bessel_k1(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k1: x must be > 0");
  if (x >= 740.0) return 0.0;
  if (x <= 4.0) return k1_series(x);
  if (x < 13.0) return k_integral(x, 1);
  return k_asymptotic(x, 1);
}

}  // namespace cncas
