#pragma once

#include <span>
#include <vector>

namespace cncas {

struct KkTailInfo {
  double tail_fraction = 0.0;      // share contributed by the 1/w^2 tail model
  double low_end_fraction = 0.0;   // share contributed by the flat extension
};

// Continuation of a causal conductivity to the imaginary frequency axis:
//   sigma(i xi) = (2/pi) integral_0^inf xi * Re sigma(w) / (w^2 + xi^2) dw.
// Re sigma is taken piecewise linear between the samples, constant below the
// first sample and decaying as 1/w^2 beyond the last one; every piece is
// integrated in closed form.  Samples must be strictly increasing, positive
// in w and nonnegative in Re sigma.  Units of the result follow the samples.
double kk_to_imaginary_axis(std::span<const double> omega,
                            std::span<const double> re_sigma, double xi,
                            KkTailInfo* info = nullptr);

// Dispersion partner on the real axis (diagnostic):
//   Im sigma(w0) = -(2 w0/pi) PV integral_0^inf Re sigma(w)/(w^2 - w0^2) dw,
// restricted to the sampled range plus the same flat/tail extensions.
double kk_imag_part_real_axis(std::span<const double> omega,
                              std::span<const double> re_sigma, double omega0);

}  // namespace cncas
