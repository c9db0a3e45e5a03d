#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <stdexcept>

#include "cncas/constants.hpp"
#include "cncas/film/conductivity_tensor.hpp"
#include "cncas/film/film_spec.hpp"
#include "cncas/lifshitz/evaluator.hpp"
#include "cncas/lifshitz/fresnel.hpp"
#include "cncas/numerics/derivative.hpp"

using namespace cncas;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

ConductivityTensor diag_tensor(double sx, double sy) {
  ConductivityTensor t;
  t.xx = sx;
  t.yy = sy;
  return t;
}

std::array<double, 4> entries(const Mat2& m) {
  return {m.xx, m.xy, m.yx, m.yy};
}

std::array<double, 4> entries(const ConductivityTensor& t) {
  return {t.xx, t.xy, t.yx, t.yy};
}

// Dispersionless anisotropic sheet: a constant diagonal conductivity whose
// principal axes are rotated by a fixed angle.  Smooth in theta, so it
// exercises the torque and symmetry plumbing without the film stack's cost.
class DiagSheet final : public Sheet {
 public:
  DiagSheet(double sx, double sy, double angle)
      : sx_(sx), sy_(sy), angle_(angle) {}

  ConductivityTensor tensor(double, double theta, double xi,
                            double) const override {
    ConductivityTensor t = diag_tensor(sx_, sy_);
    t.xi = xi;
    return rotate_tensor(t, theta - angle_);
  }

  ConductivityTensor tensor_dangle(double, double theta, double xi,
                                   double) const override {
    const double chi = theta - angle_;
    const ConductivityTensor d = rotate_tensor_dphi(diag_tensor(sx_, sy_), chi);
    ConductivityTensor out = d;
    out.xx = -d.xx;
    out.xy = -d.xy;
    out.yx = -d.yx;
    out.yy = -d.yy;
    out.xi = xi;
    return out;
  }

 private:
  double sx_, sy_, angle_;
};

FilmSpec test_film() {
  FilmSpec fs;
  fs.ch = Chirality{12, 0};
  return normalize_film_spec(fs);
}

}  // namespace

TEST_CASE("two by two helpers satisfy the exact matrix identities") {
  const Mat2 a{0.3, -1.2, 0.7, 2.1};
  const Mat2 b{-0.5, 0.4, 1.3, 0.8};
  const Mat2 ab = mat2_mul(a, b);
  const Mat2 ba = mat2_mul(b, a);
  CHECK(rel_err(mat2_det(ab), mat2_det(a) * mat2_det(b)) < 1e-14);
  CHECK(std::abs(mat2_trace(ab) - mat2_trace(ba)) < 1e-14);
  // Cayley-Hamilton: a^2 - tr(a) a + det(a) 1 = 0.
  const Mat2 a2 = mat2_mul(a, a);
  CHECK(std::abs(a2.xx - mat2_trace(a) * a.xx + mat2_det(a)) < 1e-14);
  CHECK(std::abs(a2.xy - mat2_trace(a) * a.xy) < 1e-14);
  CHECK(std::abs(a2.yx - mat2_trace(a) * a.yx) < 1e-14);
  CHECK(std::abs(a2.yy - mat2_trace(a) * a.yy + mat2_det(a)) < 1e-14);
}

TEST_CASE("fresnel matrix reduces to the scalar coefficients when isotropic") {
  for (double s : {1e-3, 0.1, 1.0, 10.0, 1e4}) {
    for (double lambda : {1.0, 1.5, 4.0, 100.0}) {
      const Mat2 r = fresnel_matrix(diag_tensor(s, s), lambda);
      CHECK(rel_err(r.xx, -s / (lambda + s)) < 1e-13);
      CHECK(rel_err(r.yy, lambda * s / (1.0 + lambda * s)) < 1e-13);
      CHECK(r.xy == 0.0);
      CHECK(r.yx == 0.0);
    }
  }
}

TEST_CASE("fresnel matrix approaches the ideal-metal coefficients") {
  const Mat2 r = fresnel_matrix(diag_tensor(1e8, 1e8), 2.0);
  CHECK(std::abs(r.xx + 1.0) < 1e-7);
  CHECK(std::abs(r.yy - 1.0) < 1e-7);
}

TEST_CASE("fresnel entries stay bounded for passive rotated tensors") {
  for (double sx : {1e-4, 0.3, 5.0}) {
    for (double sy : {1e-3, 2.0, 300.0}) {
      for (double phi : {0.0, 0.4, 1.2}) {
        for (double lambda : {1.0, 3.0, 50.0}) {
          const ConductivityTensor t = rotate_tensor(diag_tensor(sx, sy), phi);
          const Mat2 r = fresnel_matrix(t, lambda);
          CHECK(std::abs(r.xx) <= 1.0);
          CHECK(std::abs(r.yy) <= 1.0);
          CHECK(std::isfinite(r.xy));
          CHECK(std::isfinite(r.yx));
        }
      }
    }
  }
  CHECK_THROWS_AS(fresnel_matrix(diag_tensor(1.0, 1.0), 0.5),
                  std::invalid_argument);
}

TEST_CASE("fresnel derivative matches finite differences of a rotated sheet") {
  const ConductivityTensor base = diag_tensor(0.3, 7.0);
  for (double phi : {0.2, 0.7, 1.3}) {
    for (double lambda : {1.2, 5.0}) {
      const Mat2 got = fresnel_matrix_derivative(
          rotate_tensor(base, phi), rotate_tensor_dphi(base, phi), lambda);
      const auto g = entries(got);
      for (int i = 0; i < 4; ++i) {
        const DerivativeResult fd = central_derivative(
            [&](double p) {
              return entries(fresnel_matrix(rotate_tensor(base, p), lambda))[i];
            },
            phi, 1e-4);
        CHECK(std::abs(g[i] - fd.value) < 1e-6);
      }
    }
  }
}

TEST_CASE("rotation derivative of the tensor matches finite differences") {
  const ConductivityTensor base = diag_tensor(0.3, 7.0);
  for (double phi : {0.0, 0.5, 2.4}) {
    const auto g = entries(rotate_tensor_dphi(base, phi));
    for (int i = 0; i < 4; ++i) {
      const DerivativeResult fd = central_derivative(
          [&](double p) { return entries(rotate_tensor(base, p))[i]; }, phi,
          1e-4);
      CHECK(std::abs(g[i] - fd.value) < 1e-9);
    }
  }
  CHECK_THROWS_AS(rotate_tensor_dphi(rotate_tensor(base, 0.3), 0.1),
                  std::invalid_argument);
}

TEST_CASE("zero-frequency reflection collapses to the lone TM channel") {
  const Mat2 n0 = fresnel_n0_limit();
  CHECK(n0.xx == 0.0);
  CHECK(n0.xy == 0.0);
  CHECK(n0.yx == 0.0);
  CHECK(n0.yy == 1.0);

  // A film sheet approaches that limit as kappa -> 0 at fixed k.
  const FilmSheet sheet(test_film(), 0.0);
  const double k = 1e8, theta = 1.0;
  double prev_xx = 1.0, prev_dyy = 1.0;
  for (double kappa : {1e4, 1e2}) {
    const double q = std::hypot(kappa, k);
    const Mat2 r = fresnel_matrix(
        sheet.tensor(k, theta, c_light * kappa, 0.0), q / kappa);
    CHECK(std::abs(r.xx) < prev_xx);
    CHECK(std::abs(r.yy - 1.0) < prev_dyy);
    prev_xx = std::abs(r.xx);
    prev_dyy = std::abs(r.yy - 1.0);
  }
  CHECK(prev_xx < 1e-3);
  CHECK(prev_dyy < 1e-3);
}

TEST_CASE("film sheet angle derivative matches finite differences") {
  const FilmSpec fs = test_film();
  const double k = 5e7, theta = 0.9, xi = 1e14;
  for (double T : {0.0, 300.0}) {
    for (double angle : {0.15, -0.4}) {
      const FilmSheet sheet(fs, angle);
      const auto g = entries(sheet.tensor_dangle(k, theta, xi, T));
      for (int i = 0; i < 4; ++i) {
        const DerivativeResult fd = central_derivative(
            [&](double a) {
              return entries(FilmSheet(fs, a).tensor(k, theta, xi, T))[i];
            },
            angle, 1e-5);
        CHECK(std::abs(g[i] - fd.value) <=
              1e-6 * std::max(1.0, std::abs(fd.value)));
      }
    }
  }
}

TEST_CASE("reflection derivative matches finite differences through fresnel") {
  const FilmSpec fs = test_film();
  const double k = 5e7, theta = 0.9, kappa = 3e5, xi = c_light * kappa;
  const double lambda = std::hypot(kappa, k) / kappa;
  for (double angle : {0.3, 1.1}) {
    const FilmSheet sheet(fs, angle);
    const auto g = entries(
        reflection_derivative(sheet, k, theta, xi, 0.0, kappa));
    for (int i = 0; i < 4; ++i) {
      const DerivativeResult fd = central_derivative(
          [&](double a) {
            return entries(fresnel_matrix(
                FilmSheet(fs, a).tensor(k, theta, xi, 0.0), lambda))[i];
          },
          angle, 1e-5);
      CHECK(std::abs(g[i] - fd.value) <=
            1e-6 * std::max(1.0, std::abs(fd.value)));
    }
  }
}

TEST_CASE("closed-form energies match their frozen values") {
  CHECK(rel_err(ideal_metal_energy(1e-6), -4.3337525748258449e-10) < 1e-12);
  CHECK(rel_err(thermal_limit_energy(1e-7, 300.0), -9.9051192596969869e-9) <
        1e-12);
  CHECK_THROWS_AS(ideal_metal_energy(0.0), std::invalid_argument);
  CHECK_THROWS_AS(thermal_limit_energy(1e-7, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(thermal_limit_energy(-1.0, 300.0), std::invalid_argument);
}

TEST_CASE("thermal mode returns the closed form and a strictly zero torque") {
  const DiagSheet a(0.4, 20.0, 0.0), b(0.4, 20.0, 0.6);
  EvaluationOptions opt;
  opt.mode = SpectralMode::thermal;
  opt.temperature_K = 77.0;
  for (double D : {20e-9, 250e-9}) {
    const LifshitzResult r = casimir_torque(a, b, D, opt);
    CHECK(r.energy == thermal_limit_energy(D, 77.0));
    CHECK(r.torque == 0.0);
    CHECK(r.converged);
  }
}

TEST_CASE("strong isotropic sheets recover the ideal-metal energy") {
  const IsotropicSheet a(1e6), b(1e6);
  EvaluationOptions opt;
  opt.mode = SpectralMode::quantum;
  opt.temperature_K = 0.0;
  const LifshitzResult r = casimir_energy(a, b, 1e-6, opt);
  CHECK(r.converged);
  CHECK(std::abs(r.energy / ideal_metal_energy(1e-6) - 1.0) < 0.01);
}

TEST_CASE("integrand vanishes beyond the cavity cutoff and is attractive") {
  const IsotropicSheet a(5.0), b(5.0);
  const double D = 1e-7;
  CHECK(energy_integrand(a, b, D, 1e4, 0.0, 4000.0 / D, 0.3) == 0.0);
  CHECK(energy_integrand(a, b, D, 1e4, 0.0, 1.0 / D, 0.3) < 0.0);
}

TEST_CASE("torque integrand agrees with an explicit matrix inverse") {
  const DiagSheet a(0.4, 20.0, 0.0), b(0.4, 20.0, 0.6);
  const double D = 1e-7, kappa = 2e6, k = 8e6, theta = 0.8;
  const double xi = c_light * kappa;
  const double q = std::hypot(kappa, k);
  const double x = std::exp(-2.0 * D * q);
  const Mat2 ra = fresnel_matrix(a.tensor(k, theta, xi, 0.0), q / kappa);
  const Mat2 rb = fresnel_matrix(b.tensor(k, theta, xi, 0.0), q / kappa);
  const Mat2 drb = fresnel_matrix_derivative(
      b.tensor(k, theta, xi, 0.0), b.tensor_dangle(k, theta, xi, 0.0),
      q / kappa);
  const Mat2 ab = mat2_mul(ra, rb);
  const Mat2 m{1.0 - x * ab.xx, -x * ab.xy, -x * ab.yx, 1.0 - x * ab.yy};
  const double det = mat2_det(m);
  const Mat2 inv{m.yy / det, -m.xy / det, -m.yx / det, m.xx / det};
  const double want = x * mat2_trace(mat2_mul(inv, mat2_mul(ra, drb)));
  const double got = torque_integrand(a, b, D, kappa, 0.0, k, theta);
  CHECK(rel_err(got, want) < 1e-12);
}

TEST_CASE("torque equals the negative angle derivative of the energy") {
  const DiagSheet a(0.4, 20.0, 0.0);
  EvaluationOptions opt;
  opt.mode = SpectralMode::quantum;
  opt.temperature_K = 0.0;
  opt.rel_tol = 1e-6;
  const double D = 1e-7, phi = 0.6;
  const LifshitzResult r = casimir_torque(a, DiagSheet(0.4, 20.0, phi), D, opt);
  CHECK(r.converged);
  const DerivativeResult fd = central_derivative(
      [&](double p) {
        return casimir_energy(a, DiagSheet(0.4, 20.0, p), D, opt).energy;
      },
      phi, 0.02);
  CHECK(rel_err(r.torque, -fd.value) < 1e-3);
}

TEST_CASE("energy is even and pi periodic in the angle, torque is odd") {
  const DiagSheet a(0.4, 20.0, 0.0);
  EvaluationOptions opt;
  opt.mode = SpectralMode::quantum;
  opt.temperature_K = 0.0;
  opt.rel_tol = 1e-7;
  const double D = 1e-7, phi = 0.4;
  const LifshitzResult plus = casimir_torque(a, DiagSheet(0.4, 20.0, phi), D, opt);
  const LifshitzResult minus =
      casimir_torque(a, DiagSheet(0.4, 20.0, -phi), D, opt);
  const LifshitzResult shifted =
      casimir_energy(a, DiagSheet(0.4, 20.0, phi + pi), D, opt);
  CHECK(rel_err(plus.energy, minus.energy) < 1e-9);
  CHECK(rel_err(plus.energy, shifted.energy) < 1e-9);
  CHECK(rel_err(plus.torque, -minus.torque) < 1e-9);
}

TEST_CASE("matsubara sum approaches the thermal limit at high temperature") {
  const DiagSheet a(0.4, 20.0, 0.0), b(0.4, 20.0, 0.7);
  EvaluationOptions opt;
  opt.mode = SpectralMode::matsubara;
  opt.temperature_K = 3000.0;
  const double D = 1e-6;
  const LifshitzResult r = casimir_energy(a, b, D, opt);
  CHECK(r.converged);
  CHECK(r.terms_used >= 2);
  CHECK(rel_err(r.energy, thermal_limit_energy(D, 3000.0)) < 1e-4);
}

TEST_CASE("matsubara sum approaches the quantum integral at low temperature") {
  const DiagSheet a(0.4, 20.0, 0.0), b(0.4, 20.0, 0.7);
  EvaluationOptions opt;
  opt.mode = SpectralMode::matsubara;
  opt.temperature_K = 4.0;
  opt.rel_tol = 1e-6;
  const double D = 1e-6;
  const LifshitzResult warm = casimir_energy(a, b, D, opt);
  opt.mode = SpectralMode::quantum;
  const LifshitzResult cold = casimir_energy(a, b, D, opt);
  CHECK(warm.converged);
  CHECK(cold.converged);
  CHECK(rel_err(warm.energy, cold.energy) < 2e-2);
}

TEST_CASE("constructors and modes reject invalid arguments") {
  CHECK_THROWS_AS(IsotropicSheet(0.0), std::invalid_argument);
  CHECK_THROWS_AS(IsotropicSheet(-2.0), std::invalid_argument);
  FilmSpec raw;
  raw.ch = Chirality{12, 0};
  CHECK_THROWS_AS(FilmSheet(raw, 0.0), std::invalid_argument);

  const DiagSheet a(1.0, 1.0, 0.0);
  EvaluationOptions opt;
  CHECK_THROWS_AS(casimir_energy(a, a, -1e-9, opt), std::invalid_argument);
  opt.mode = SpectralMode::matsubara;
  opt.temperature_K = 0.0;
  CHECK_THROWS_AS(casimir_energy(a, a, 1e-7, opt), std::invalid_argument);
}
