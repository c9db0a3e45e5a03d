#include "cncas/film/conductivity_tensor.hpp"

#include <cmath>
#include <stdexcept>

#include "cncas/film/array_conductivity.hpp"

namespace cncas {

ConductivityTensor film_tensor(const SpectralPoint& pt, const FilmSpec& fs) {
  ConductivityTensor t;
  t.k_y = pt.k_y;
  t.xi = pt.frequency;
  t.xx = sigma_xx_array_tilde(pt.frequency, fs);
  t.yy = sigma_yy_array_tilde(pt, fs);
  return t;
}

ConductivityTensor rotate_tensor(const ConductivityTensor& t, double phi) {
  if (t.xy != 0.0 || t.yx != 0.0) {
    throw std::invalid_argument("rotate_tensor: input must be diagonal");
  }
  const double c = std::cos(phi), s = std::sin(phi);
  ConductivityTensor out = t;
  out.xx = t.xx * c * c + t.yy * s * s;
  out.yy = t.xx * s * s + t.yy * c * c;
  out.xy = (t.yy - t.xx) * s * c;
  out.yx = out.xy;
  out.phi = phi;
  return out;
}

ConductivityTensor rotate_tensor_dphi(const ConductivityTensor& t, double phi) {
  if (t.xy != 0.0 || t.yx != 0.0) {
    throw std::invalid_argument("rotate_tensor_dphi: input must be diagonal");
  }
  const double s2 = std::sin(2.0 * phi), c2 = std::cos(2.0 * phi);
  const double gap = t.yy - t.xx;
  ConductivityTensor out = t;
  out.xx = gap * s2;
  out.yy = -gap * s2;
  out.xy = gap * c2;
  out.yx = out.xy;
  out.phi = phi;
  return out;
}

double tensor_det(const ConductivityTensor& t) {
  return t.xx * t.yy - t.xy * t.yx;
}

double tensor_trace(const ConductivityTensor& t) { return t.xx + t.yy; }

}  // namespace cncas
