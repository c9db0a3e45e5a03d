#include "cncas/numerics/derivative.hpp"

#include <cmath>
#include <stdexcept>

namespace cncas {

DerivativeResult central_derivative(const std::function<double(double)>& f,
                                    double x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("central_derivative: h must be > 0");
  const double f1m = f(x - h), f1p = f(x + h);
  const double f2m = f(x - 2.0 * h), f2p = f(x + 2.0 * h);
  const double five = (f2m - 8.0 * f1m + 8.0 * f1p - f2p) / (12.0 * h);
  const double three = (f1p - f1m) / (2.0 * h);
  return {five, std::abs(five - three)};
}

}  // namespace cncas
