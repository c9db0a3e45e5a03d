#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "cncas/constants.hpp"
#include "cncas/film/array_conductivity.hpp"
#include "cncas/film/conductivity_tensor.hpp"
#include "cncas/film/film_spec.hpp"
#include "cncas/numerics/bessel.hpp"
#include "cncas/numerics/derivative.hpp"
#include "cncas/numerics/kramers_kronig.hpp"
#include "cncas/swcnt/chirality.hpp"
#include "cncas/swcnt/interband.hpp"

using namespace cncas;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

FilmSpec default_film() {
  FilmSpec fs;
  fs.ch = {12, 0};
  return normalize_film_spec(fs);
}

}  // namespace

TEST_CASE("film spec: defaults, validation, dilute warning") {
  const FilmSpec fs = default_film();
  const double R = tube_radius(fs.ch);
  CHECK(rel_err(fs.delta_m, 10.0 * R) < 1e-14);
  CHECK(rel_err(fs.d_m, 2.0 * R) < 1e-14);
  CHECK(rel_err(volume_fraction(fs), pi * R * R / (fs.delta_m * fs.d_m)) <
        1e-14);
  CHECK(volume_fraction(fs) < 1.0);

  FilmSpec tight = fs;
  tight.delta_m = 1.9 * R;
  CHECK_THROWS_AS(normalize_film_spec(tight), std::invalid_argument);

  FilmSpec bad = fs;
  bad.eps_b = -1.0;
  CHECK_THROWS_AS(normalize_film_spec(bad), std::invalid_argument);

  // Screening-length threshold: warn exactly when Delta - 2R falls below
  // 5 eps_b d / (2 eps_s).
  FilmSpec near = fs;
  const double threshold = 5.0 * fs.eps_b * fs.d_m / (2.0 * fs.eps_s);
  near.delta_m = 2.0 * R + 1.001 * threshold;
  CHECK_FALSE(dilute_warning_triggered(normalize_film_spec(near)));
  near.delta_m = 2.0 * R + 0.999 * threshold;
  CHECK(dilute_warning_triggered(normalize_film_spec(near)));
}

TEST_CASE("array conductivity: coupling and plasma frequency") {
  const FilmSpec fs = default_film();
  const double R = tube_radius(fs.ch);

  CHECK(coupling_K(0.0, fs) == 0.0);
  CHECK(plasma_frequency(0.0, fs) == 0.0);

  // Chained oracle at k_y R = 1 through the Bessel module.
  const double ky = 1.0 / R;
  const double h_want = 2.0 * bessel_i0(1.0) * bessel_k0(1.0) /
                        (1.0 + 2.0 * fs.eps_s / (fs.eps_b * ky * fs.d_m));
  const double f_cn = volume_fraction(fs);
  CHECK(rel_err(coupling_K(ky, fs), 4.0 * pi * f_cn * h_want / (fs.eps_b * R)) <
        1e-12);

  // K and omega_p are two views of one quantity:
  //   K = f_cn m* omega_p^2 d / (e^2 N_2D R).
  for (double k : {1e7, 1.0 / R, 5.0 / R}) {
    const double wp = plasma_frequency(k, fs);
    const double m_star = fs.ep.m_star_me * electron_mass;
    const double e2 = e2_gauss;  // Gaussian e^2 = alpha hbar c
    const double want =
        f_cn * m_star * wp * wp * fs.d_m / (e2 * fs.ep.n2d_m2 * R);
    CHECK(rel_err(coupling_K(k, fs), want) < 1e-12);
  }

  // Monotone growth with k_y over the relevant window.
  double prev = 0.0;
  for (double k = 1e6; k < 2.0 / R; k *= 1.6) {
    const double v = coupling_K(k, fs);
    CHECK(v > prev);
    prev = v;
  }

  // Derivative of K against finite differences.
  for (double k : {1e7, 1.0 / R, 4.0 / R}) {
    const DerivativeResult fd = central_derivative(
        [&](double q) { return coupling_K(q, fs); }, k, k * 3e-3);
    CHECK(rel_err(coupling_K_dky(k, fs), fd.value) < 1e-8);
  }
}

TEST_CASE("array conductivity: yy channel composition") {
  const FilmSpec fs = default_film();
  const double R = tube_radius(fs.ch);
  const double ky = 1.0 / R;
  const double xi = 1e14;
  const SpectralPoint pt = imaginary_point(ky, xi, 0.0);

  const SigmaYyParts parts = sigma_yy_array_parts(pt, fs);
  CHECK(parts.intraband > 0.0);
  CHECK(parts.collective > 0.0);
  CHECK(rel_err(parts.total, parts.intraband + parts.collective) < 1e-14);
  CHECK(rel_err(sigma_yy_array(pt, fs), parts.total) < 1e-14);

  // The collective channel is capped by its decoupled limit
  // eps_b d xi / (2 pi): the denominator only adds to xi.
  CHECK(parts.collective < fs.eps_b * fs.d_m * xi / (2.0 * pi));

  // Sparser arrays conduct less per unit width.
  FilmSpec sparse = fs;
  sparse.delta_m = 30.0 * R;
  sparse = normalize_film_spec(sparse);
  CHECK(sigma_yy_array(pt, sparse) < parts.total);

  // High-frequency falloff past the mobility peak near xi = v_F k_y.
  const double near_peak = sigma_yy_array(imaginary_point(ky, 3e15, 0.0), fs);
  double decay_prev = near_peak;
  for (double x : {1e18, 1e19, 1e20}) {
    const double s = sigma_yy_array(imaginary_point(ky, x, 0.0), fs);
    CHECK(s < decay_prev);
    decay_prev = s;
  }
  CHECK(decay_prev < 0.01 * near_peak);

  // Thermal occupation only suppresses the response.
  const double cold = sigma_yy_array(pt, fs);
  const double warm = sigma_yy_array(imaginary_point(ky, xi, 300.0), fs);
  CHECK(warm <= cold);
  CHECK(warm > 0.0);

  // Stored-units variant and its k_y derivative.
  CHECK(rel_err(sigma_yy_array_tilde(pt, fs),
                2.0 * pi / c_light * parts.total) < 1e-14);
  for (double k : {3e8, ky, 3.0 * ky}) {
    for (double T : {0.0, 300.0}) {
      const DerivativeResult fd = central_derivative(
          [&](double q) {
            return sigma_yy_array_tilde(imaginary_point(q, xi, T), fs);
          },
          k, k * 3e-3);
      CHECK(rel_err(sigma_yy_array_tilde_dky(imaginary_point(k, xi, T), fs),
                    fd.value) < 1e-7);
    }
  }
}

TEST_CASE("array conductivity: xx channel") {
  FilmSpec fs = default_film();
  fs.eps_b = 2.0;  // unit contrast against the surroundings
  CHECK(sigma_xx_array(1e14, fs) > 0.0);
  CHECK(sigma_xx_array(0.0, fs) == 0.0);

  // Matched permittivities leave no transverse response.
  FilmSpec matched = fs;
  matched.eps_s = matched.eps_b;
  matched = normalize_film_spec(matched);
  CHECK(sigma_xx_array(1e14, matched) == 0.0);

  // Direct value: d = 0.94 nm, hbar xi = 1 eV, eps_b - eps_s = 1.
  FilmSpec probe = fs;
  probe.d_m = 0.94e-9;
  probe.eps_b = 2.0;
  probe = normalize_film_spec(probe);
  const double xi = 1.0 / hbar_eVs;
  CHECK(rel_err(sigma_xx_array(xi, probe),
                0.94e-9 * xi * 1.0 / (4.0 * pi)) < 1e-14);
  CHECK(rel_err(sigma_xx_array_tilde(xi, probe),
                0.94e-9 * xi * 1.0 / (2.0 * c_light)) < 1e-14);
}

TEST_CASE("collective channel: causal real-axis partner") {
  // The imaginary-axis collective form must be the continuation of a causal
  // real-axis response. Model sigma_inter with one oscillator so both sides
  // have closed forms, then compare through the dispersion integral.
  const FilmSpec fs = default_film();
  const double R = tube_radius(fs.ch);
  const double sigma0 = fine_structure * c_light / 4.0;
  const double w0 = 1.5 / hbar_eVs;
  const double gam = 0.3 / hbar_eVs;
  const double amp = 2.0 * sigma0 * gam;  // strength 2 oscillator

  const double K = coupling_K(1.0 / R, fs);
  const double pref = fs.eps_b * fs.d_m / (2.0 * pi);

  const auto sigma_iw = [&](double xi) {
    return amp * xi / (w0 * w0 + xi * xi + gam * xi);
  };
  const auto coll_iw = [&](double xi) {
    const double ks = K * sigma_iw(xi);
    return pref * xi * ks / (xi + ks);
  };
  const auto coll_re = [&](double w) {
    const std::complex<double> s =
        amp * std::complex<double>(0.0, -w) /
        std::complex<double>(w0 * w0 - w * w, -gam * w);
    const std::complex<double> ks = K * s;
    const std::complex<double> miw(0.0, -w);
    return (pref * (miw * ks / (miw + ks))).real() / pref * pref;
  };

  std::vector<double> wgrid, regrid;
  const int n = 12000;
  for (int i = 0; i < n; ++i) {
    const double w = 1e10 * std::exp(std::log(1e9) * i / (n - 1.0));
    wgrid.push_back(w);
    const double re = coll_re(w);
    regrid.push_back(std::max(re, 0.0));
    CHECK(re > -1e-8 * pref * w0);  // passivity
  }
  for (double xi : {0.3 * w0, w0, 3.0 * w0}) {
    const double via_kk = kk_to_imaginary_axis(wgrid, regrid, xi);
    CHECK(rel_err(via_kk, coll_iw(xi)) < 2e-3);
  }
}

TEST_CASE("conductivity tensor: rotation invariants") {
  FilmSpec fs = default_film();
  fs.eps_b = 2.0;  // nonzero xx keeps the determinant away from zero
  const double R = tube_radius(fs.ch);
  const SpectralPoint pt = imaginary_point(1.0 / R, 1e14, 0.0);

  const ConductivityTensor diag = film_tensor(pt, fs);
  CHECK(diag.xy == 0.0);
  CHECK(diag.yx == 0.0);
  CHECK(diag.xx > 0.0);
  CHECK(diag.yy > diag.xx);  // tubes run along y

  for (double phi : {0.1, pi / 4.0, 1.2, 2.9}) {
    const ConductivityTensor rot = rotate_tensor(diag, phi);
    CHECK(rel_err(tensor_det(rot), tensor_det(diag)) < 1e-12);
    CHECK(rel_err(tensor_trace(rot), tensor_trace(diag)) < 1e-12);

    // Symmetric rotation of a symmetric tensor.
    CHECK(rot.xy == rot.yx);

    // Odd off-diagonal, pi periodicity.
    const ConductivityTensor neg = rotate_tensor(diag, -phi);
    CHECK(std::abs(neg.xy + rot.xy) < 1e-18);
    const ConductivityTensor per = rotate_tensor(diag, phi + pi);
    CHECK(rel_err(per.xx + 1.0, rot.xx + 1.0) < 1e-12);
    CHECK(std::abs(per.xy - rot.xy) < 1e-18 + 1e-12 * std::abs(rot.xy));
  }

  // Quarter turn swaps the axes.
  const ConductivityTensor quarter = rotate_tensor(diag, pi / 2.0);
  CHECK(rel_err(quarter.xx, diag.yy) < 1e-12);
  CHECK(rel_err(quarter.yy, diag.xx) < 1e-12);
  CHECK(std::abs(quarter.xy) < 1e-15 * diag.yy);

  // At pi/4 a purely uniaxial tensor spreads evenly.
  ConductivityTensor uni = diag;
  uni.xx = 0.0;
  const ConductivityTensor mixed = rotate_tensor(uni, pi / 4.0);
  CHECK(rel_err(mixed.xx, uni.yy / 2.0) < 1e-12);
  CHECK(rel_err(mixed.yy, uni.yy / 2.0) < 1e-12);
  CHECK(rel_err(mixed.xy, uni.yy / 2.0) < 1e-12);

  ConductivityTensor off = diag;
  off.xy = 1e-3;
  CHECK_THROWS_AS(rotate_tensor(off, 0.3), std::invalid_argument);
}
