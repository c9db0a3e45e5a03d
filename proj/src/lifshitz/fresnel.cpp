#include "cncas/lifshitz/fresnel.hpp"

#include <stdexcept>

namespace cncas {

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
  return {a.xx * b.xx + a.xy * b.yx, a.xx * b.xy + a.xy * b.yy,
          a.yx * b.xx + a.yy * b.yx, a.yx * b.xy + a.yy * b.yy};
}

double mat2_trace(const Mat2& m) { return m.xx + m.yy; }

double mat2_det(const Mat2& m) { return m.xx * m.yy - m.xy * m.yx; }

Mat2 fresnel_matrix(const ConductivityTensor& s, double lambda) {
  if (!(lambda >= 1.0)) {
    throw std::invalid_argument("fresnel_matrix: lambda must be >= 1");
  }
  const double det_s = s.xx * s.yy - s.xy * s.yx;
  const double delta = 1.0 + lambda * s.xx + s.yy / lambda + det_s;
  if (!(delta > 0.0)) {
    throw std::runtime_error("fresnel_matrix: nonpositive denominator");
  }
  return {-(s.yy / lambda + det_s) / delta, -s.yx / delta, s.xy / delta,
          (lambda * s.xx + det_s) / delta};
}

Mat2 fresnel_matrix_derivative(const ConductivityTensor& s,
                               const ConductivityTensor& ds, double lambda) {
  if (!(lambda >= 1.0)) {
    throw std::invalid_argument(
        "fresnel_matrix_derivative: lambda must be >= 1");
  }
  const double det_s = s.xx * s.yy - s.xy * s.yx;
  const double ddet = ds.xx * s.yy + s.xx * ds.yy - ds.xy * s.yx - s.xy * ds.yx;
  const double delta = 1.0 + lambda * s.xx + s.yy / lambda + det_s;
  if (!(delta > 0.0)) {
    throw std::runtime_error("fresnel_matrix_derivative: nonpositive denominator");
  }
  const double ddelta = lambda * ds.xx + ds.yy / lambda + ddet;
  const Mat2 n{-(s.yy / lambda + det_s), -s.yx, s.xy, lambda * s.xx + det_s};
  const Mat2 dn{-(ds.yy / lambda + ddet), -ds.yx, ds.xy, lambda * ds.xx + ddet};
  const double inv = 1.0 / delta;
  const double f = ddelta * inv * inv;
  return {dn.xx * inv - n.xx * f, dn.xy * inv - n.xy * f,
          dn.yx * inv - n.yx * f, dn.yy * inv - n.yy * f};
}

Mat2 fresnel_n0_limit() { return {0.0, 0.0, 0.0, 1.0}; }

}  // namespace cncas
