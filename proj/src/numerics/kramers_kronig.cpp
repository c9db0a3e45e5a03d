#include "cncas/numerics/kramers_kronig.hpp"

#include <cmath>
#include <stdexcept>

#include "cncas/constants.hpp"

namespace cncas {
namespace {

void validate_samples(std::span<const double> omega,
                      std::span<const double> re_sigma) {
  if (omega.size() != re_sigma.size() || omega.size() < 2) {
    throw std::invalid_argument("kk: need >= 2 samples of equal length");
  }
  if (!(omega.front() > 0.0)) {
    throw std::invalid_argument("kk: frequencies must be positive");
  }
  for (std::size_t i = 0; i + 1 < omega.size(); ++i) {
    if (!(omega[i] < omega[i + 1])) {
      throw std::invalid_argument("kk: frequencies must be strictly increasing");
    }
  }
  for (double s : re_sigma) {
    if (!(s >= 0.0)) {
      throw std::invalid_argument("kk: Re sigma must be nonnegative");
    }
  }
}

}  // namespace

double kk_to_imaginary_axis(std::span<const double> omega,
                            std::span<const double> re_sigma, double xi,
                            KkTailInfo* info) {
  validate_samples(omega, re_sigma);
  if (!(xi > 0.0)) throw std::invalid_argument("kk: xi must be > 0");

  // Flat extension below the first sample.
  const double low = re_sigma.front() * std::atan(omega.front() / xi);

  double panels = 0.0;
  for (std::size_t i = 0; i + 1 < omega.size(); ++i) {
    const double w1 = omega[i], w2 = omega[i + 1];
    const double b = (re_sigma[i + 1] - re_sigma[i]) / (w2 - w1);
    const double a = re_sigma[i] - b * w1;
    // atan(w2/xi) - atan(w1/xi), evaluated without cancellation.
    const double datan = std::atan(xi * (w2 - w1) / (xi * xi + w1 * w2));
    const double dlog = std::log1p((w2 - w1) * (w2 + w1) / (w1 * w1 + xi * xi));
    panels += a * datan + 0.5 * b * xi * dlog;
  }

  // 1/w^2 tail beyond the last sample.
  const double wn = omega.back();
  const double sn = re_sigma.back();
  const double t = xi / wn;
  double tail;
  if (t < 1e-2) {
    const double t2 = t * t;
    tail = sn * t * (1.0 / 3.0 - t2 / 5.0 + t2 * t2 / 7.0);
  } else {
    tail = sn * wn * wn / xi * (1.0 / wn - std::atan(t) / xi);
  }

  const double total = (2.0 / pi) * (low + panels + tail);
  if (info) {
    const double denom = std::abs(total) > 0.0 ? std::abs(total) : 1.0;
    info->tail_fraction = (2.0 / pi) * std::abs(tail) / denom;
    info->low_end_fraction = (2.0 / pi) * std::abs(low) / denom;
  }
  return total;
}

double kk_imag_part_real_axis(std::span<const double> omega,
                              std::span<const double> re_sigma,
                              double omega0) {
  validate_samples(omega, re_sigma);
  if (!(omega0 > omega.front() && omega0 < omega.back())) {
    throw std::invalid_argument(
        "kk_imag_part_real_axis: omega0 must lie inside the sampled range");
  }

  // Antiderivative of 1/(w^2 - w0^2).
  const auto F = [omega0](double w) {
    return std::log(std::abs((w - omega0) / (w + omega0))) / (2.0 * omega0);
  };

  // Interpolated Re sigma at omega0; subtracting it removes the pole inside
  // the sampled range.
  double s0 = 0.0;
  for (std::size_t i = 0; i + 1 < omega.size(); ++i) {
    if (omega0 >= omega[i] && omega0 <= omega[i + 1]) {
      const double frac = (omega0 - omega[i]) / (omega[i + 1] - omega[i]);
      s0 = re_sigma[i] + frac * (re_sigma[i + 1] - re_sigma[i]);
      break;
    }
  }

  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < omega.size(); ++i) {
    const double w1 = omega[i], w2 = omega[i + 1];
    const double b = (re_sigma[i + 1] - re_sigma[i]) / (w2 - w1);
    const double a = re_sigma[i] - b * w1;
    if (omega0 >= w1 && omega0 <= w2) {
      // Numerator (a + b w) - s0 vanishes at omega0 on this panel, leaving
      // b * (w - omega0); the pole cancels exactly.
      sum += b * std::log((w2 + omega0) / (w1 + omega0));
    } else {
      sum += (a - s0) * (F(w2) - F(w1)) +
             0.5 * b * std::log(std::abs((w2 * w2 - omega0 * omega0) /
                                         (w1 * w1 - omega0 * omega0)));
    }
  }
  // Principal value of the constant part over the sampled range.
  sum += s0 * (F(omega.back()) - F(omega.front()));

  // Flat extension below the samples; F(0) = 0.
  sum += re_sigma.front() * F(omega.front());

  // 1/w^2 tail above the samples.
  const double wn = omega.back();
  const double sn = re_sigma.back();
  sum += sn * wn * wn / (omega0 * omega0) * (-F(wn) - 1.0 / wn);

  return -(2.0 * omega0 / pi) * sum;
}

}  // namespace cncas
