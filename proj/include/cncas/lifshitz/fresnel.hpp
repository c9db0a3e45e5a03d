#pragma once

#include "cncas/film/conductivity_tensor.hpp"

namespace cncas {

// 2x2 real matrix in the (TE, TM) amplitude basis.
struct Mat2 {
  double xx = 0.0, xy = 0.0, yx = 0.0, yy = 0.0;
};

Mat2 mat2_mul(const Mat2& a, const Mat2& b);
double mat2_trace(const Mat2& m);
double mat2_det(const Mat2& m);

// Reflection matrix of a conducting sheet on the imaginary frequency axis.
// The tensor s is in stored units and expressed in the incidence frame
// (x along k_perp, y transverse to it); lambda = q/kappa >= 1 with
// q^2 = kappa^2 + k_perp^2.
//
//   R = (1/delta) [ -(s_yy/lambda + det s)    -s_yx               ]
//                 [   s_xy                     lambda s_xx + det s ]
//   delta = 1 + lambda s_xx + s_yy/lambda + det s
//
// Row/column order is (TE, TM).  A passive tensor keeps delta >= 1; an
// isotropic s reduces to r_te = -s/(lambda + s), r_tm = lambda s/(1 +
// lambda s), which reach (-1, +1) as s -> inf.
Mat2 fresnel_matrix(const ConductivityTensor& s, double lambda);

// Directional derivative of fresnel_matrix along the tensor perturbation ds
// at fixed lambda.
Mat2 fresnel_matrix_derivative(const ConductivityTensor& s,
                               const ConductivityTensor& ds, double lambda);

// kappa -> 0 limit for a sheet with nonzero dc conductivity along k_perp:
// TE dies, TM reflects perfectly.  Holds for almost every propagation
// direction; the exceptional set has zero measure in the angular average.
Mat2 fresnel_n0_limit();

}  // namespace cncas
