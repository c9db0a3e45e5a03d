#pragma once

#include <functional>

namespace cncas {

struct DerivativeResult {
  double value = 0.0;
  double error = 0.0;  // |5-point - 3-point| spread
};

// Five-point central difference with the embedded three-point value as an
// error proxy.  Step h should already account for the scale of x.
DerivativeResult central_derivative(const std::function<double(double)>& f,
                                    double x, double h);

}  // namespace cncas
