#pragma once

namespace cncas {

// Modified Bessel functions of integer order 0 and 1, double precision.
// I0/I1 accept x >= 0 and throw std::overflow_error once exp(x) would
// overflow; K0/K1 require x > 0 and underflow to 0 for large x.
double bessel_i0(double x);
double bessel_i1(double x);
double bessel_k0(double x);
double bessel_k1(double x);

}  // namespace cncas
