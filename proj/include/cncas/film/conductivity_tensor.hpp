#pragma once

#include "cncas/film/film_spec.hpp"

namespace cncas {

// In-plane conductivity tensor in the stored convention 2 pi sigma / c.
// On the imaginary axis all entries are real.  x is transverse to the tube
// axis of an unrotated film, y is along it.
struct ConductivityTensor {
  double xx = 0.0, yy = 0.0, xy = 0.0, yx = 0.0;
  double k_y = 0.0;   // evaluation wavenumber (m^-1)
  double xi = 0.0;    // imaginary frequency (rad/s)
  double phi = 0.0;   // rotation already applied
};

// Unrotated (diagonal) film tensor at one spectral point.
ConductivityTensor film_tensor(const SpectralPoint& pt, const FilmSpec& fs);

// In-plane rotation by phi; requires a diagonal input:
//   xx' = xx cos^2 + yy sin^2, yy' = xx sin^2 + yy cos^2,
//   xy' = yx' = (yy - xx) sin cos.  Trace and determinant are preserved.
ConductivityTensor rotate_tensor(const ConductivityTensor& t, double phi);

// d/dphi of rotate_tensor(t, phi) with the diagonal entries held fixed.
ConductivityTensor rotate_tensor_dphi(const ConductivityTensor& t, double phi);

double tensor_det(const ConductivityTensor& t);
double tensor_trace(const ConductivityTensor& t);

}  // namespace cncas
