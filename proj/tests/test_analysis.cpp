#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cncas/analysis/analysis.hpp"
#include "cncas/constants.hpp"
#include "cncas/lifshitz/evaluator.hpp"

using namespace cncas;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i) {
    g[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
  }
  return g;
}

}  // namespace

TEST_CASE("log slope: exact on pure power laws, any grid spacing") {
  // ln|E| is linear in ln D, so centered differences return the slope
  // exactly whatever the spacing.
  const std::vector<double> D = {1e-9, 2e-9, 4e-9, 8.5e-9, 1.3e-8, 5e-8};
  for (double p : {3.0, 4.0, 2.0}) {
    std::vector<double> E;
    for (double d : D) E.push_back(-2.7e-28 * std::pow(d, -p));
    const ScalingResult r = local_log_slope(D, E);
    REQUIRE(r.exponent.size() == D.size() - 2);
    REQUIRE(r.distance_m.size() == D.size() - 2);
    for (std::size_t i = 0; i < r.exponent.size(); ++i) {
      CHECK(rel_err(r.exponent[i], p) < 1e-12);
      CHECK(r.distance_m[i] == D[i + 1]);
    }
    CHECK(!r.transition_m.has_value());
  }
}

TEST_CASE("log slope: two-power mixture tracks the closed form") {
  // E = a/D^3 + b/D^4 has p(D) = (3 a D + 4 b)/(a D + b), falling from 4
  // to 3 with p = 3.5 exactly at D = b/a.
  const double a = 1.0, b = 1e-7;
  const std::vector<double> D = log_grid(10e-9 / 3.1623, 31.623e-6, 81);
  std::vector<double> E;
  for (double d : D) E.push_back(-(a / std::pow(d, 3) + b / std::pow(d, 4)));

  const ScalingResult r = local_log_slope(D, E);
  double prev = 4.0;
  for (std::size_t i = 0; i < r.exponent.size(); ++i) {
    const double d = r.distance_m[i];
    const double want = (3.0 * a * d + 4.0 * b) / (a * d + b);
    CHECK(std::abs(r.exponent[i] - want) < 5e-4);
    CHECK(r.exponent[i] > 3.0);
    CHECK(r.exponent[i] < 4.0);
    CHECK(r.exponent[i] < prev);  // monotone on this grid
    prev = r.exponent[i];
  }
  REQUIRE(r.transition_m.has_value());
  CHECK(rel_err(*r.transition_m, b / a) < 1e-2);
}

TEST_CASE("log slope: rejects bad input") {
  const std::vector<double> D = {1e-9, 2e-9, 4e-9};
  CHECK_THROWS_AS(local_log_slope({1e-9, 2e-9}, {-1.0, -2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(local_log_slope(D, {-1.0, -2.0}), std::invalid_argument);
  CHECK_THROWS_AS(local_log_slope(D, {-1.0, 2.0, -3.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(local_log_slope(D, {-1.0, -2.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(local_log_slope({2e-9, 1e-9, 4e-9}, {-1.0, -2.0, -3.0}),
                  std::invalid_argument);
}

TEST_CASE("crossover: synthetic power laws meet where the closed form says") {
  // |E_a| = 1e-27/D^3 and |E_b| = 1e-20/D^2 match at D = 1e-7 exactly.
  const auto e_a = [](double d) { return -1e-27 / std::pow(d, 3); };
  const auto e_b = [](double d) { return -1e-20 / (d * d); };

  const CrossoverResult r = crossover_distance(e_a, e_b, 1e-8, 1e-6);
  REQUIRE(r.found);
  CHECK(rel_err(r.distance_m, 1e-7) < 1e-3);
  CHECK(std::abs(r.residual) < 2e-3);
  CHECK(r.lower_m <= r.distance_m);
  CHECK(r.distance_m <= r.upper_m);

  // Tightening the tolerance refines, never relocates, the root.
  const CrossoverResult tight = crossover_distance(e_a, e_b, 1e-8, 1e-6, 1e-6);
  CHECK(rel_err(tight.distance_m, 1e-7) < 1e-6);
  CHECK(rel_err(tight.distance_m, r.distance_m) < 1e-3);

  // Bracket with no sign change: nothing is invented.
  const CrossoverResult none = crossover_distance(e_a, e_b, 1e-8, 5e-8);
  CHECK(!none.found);
  CHECK(none.distance_m == 0.0);

  CHECK_THROWS_AS(crossover_distance(e_a, e_b, 1e-6, 1e-8),
                  std::invalid_argument);
  CHECK_THROWS_AS(crossover_distance(e_a, e_b, 1e-8, 1e-6, 0.0),
                  std::invalid_argument);
}

TEST_CASE("crossover: strong isotropic sheets against the thermal form") {
  // A dispersionless sheet keeps E proportional to 1/D^3, so the crossover
  // sits at the ideal-metal value 16 pi^3 hbar c / (720 zeta(3) k_B T) up
  // to the sheet's small finite-conductivity offset.
  const IsotropicSheet sheet(1e6);
  EvaluationOptions opt;
  opt.rel_tol = 1e-5;

  const CrossoverResult r300 =
      quantum_thermal_crossover(sheet, sheet, 300.0, 1e-6, 2e-5, opt);
  REQUIRE(r300.found);
  CHECK(rel_err(r300.distance_m, 4.3752654170046016e-6) < 1e-3);
  CHECK(std::abs(r300.residual) < 2e-3);

  // Doubling the temperature halves the crossover distance.
  const CrossoverResult r600 =
      quantum_thermal_crossover(sheet, sheet, 600.0, 1e-6, 2e-5, opt);
  REQUIRE(r600.found);
  CHECK(rel_err(r600.distance_m, 0.5 * r300.distance_m) < 2e-3);

  // Near zero temperature the crossover leaves any laboratory bracket.
  const CrossoverResult cold =
      quantum_thermal_crossover(sheet, sheet, 1.0, 1e-6, 2e-5, opt);
  CHECK(!cold.found);

  CHECK_THROWS_AS(quantum_thermal_crossover(sheet, sheet, 0.0, 1e-6, 2e-5),
                  std::invalid_argument);
}

TEST_CASE("sign change: bisection lands on the synthetic flip point") {
  // f = (D0 - D) * 0.3 stands in for a torque whose sign flips at D0.
  const double D0 = 1.5e-7;
  const auto f = [&](double d) { return (D0 - d) * 0.3; };

  const auto hit = first_sign_change(f, {5e-8, 1e-7, 2e-7, 4e-7});
  REQUIRE(hit.has_value());
  CHECK(rel_err(*hit, D0) < 1e-3);

  // Exact zero at a grid point is returned untouched.
  const auto exact = first_sign_change(f, {1e-7, 1.5e-7, 3e-7});
  REQUIRE(exact.has_value());
  CHECK(*exact == 1.5e-7);

  // One-signed samples report no flip.
  const auto none =
      first_sign_change([](double d) { return 1.0 / d; }, {1e-8, 1e-7, 1e-6});
  CHECK(!none.has_value());

  CHECK_THROWS_AS(first_sign_change(f, {1e-7}), std::invalid_argument);
  CHECK_THROWS_AS(first_sign_change(f, {2e-7, 1e-7}), std::invalid_argument);
}

TEST_CASE("phase flip wrapper: thermal torque is zero on the first point") {
  // The thermal closed form carries no torque, so the scan sees an exact
  // zero immediately; this pins the film plumbing without a long sweep.
  FilmSpec fs;
  fs.ch = {12, 0};
  EvaluationOptions opt;
  opt.mode = SpectralMode::thermal;
  opt.temperature_K = 300.0;
  const auto hit = torque_phase_flip(fs, fs, 0.3, {1e-7, 2e-7}, opt);
  REQUIRE(hit.has_value());
  CHECK(*hit == 1e-7);
}

TEST_CASE("sin 2phi fit: recovers amplitude and the frozen residual") {
  std::vector<double> phi(12);
  for (int j = 0; j < 12; ++j) phi[j] = j * pi / 12.0;

  std::vector<double> pure(12), mixed(12);
  for (int j = 0; j < 12; ++j) {
    pure[j] = 5.0 * std::sin(2.0 * phi[j]);
    mixed[j] = std::sin(2.0 * phi[j]) + 0.1 * std::sin(4.0 * phi[j]);
  }

  const SinFitResult a = fit_sin2phi(phi, pure);
  CHECK(rel_err(a.amplitude, 5.0) < 1e-12);
  CHECK(a.residual_fraction < 1e-12);

  // sin(4 phi) is orthogonal to sin(2 phi) on this grid, so the amplitude
  // stays 1 and the residual fraction is 0.1/sqrt(1.01).
  const SinFitResult b = fit_sin2phi(phi, mixed);
  CHECK(rel_err(b.amplitude, 1.0) < 1e-12);
  CHECK(rel_err(b.residual_fraction, 0.099503719020998915) < 1e-12);

  // Scaling the samples scales the amplitude and leaves the fraction.
  std::vector<double> scaled(12);
  for (int j = 0; j < 12; ++j) scaled[j] = -3.7 * mixed[j];
  const SinFitResult c = fit_sin2phi(phi, scaled);
  CHECK(rel_err(c.amplitude, -3.7) < 1e-12);
  CHECK(rel_err(c.residual_fraction, b.residual_fraction) < 1e-12);

  const SinFitResult zero = fit_sin2phi(phi, std::vector<double>(12, 0.0));
  CHECK(zero.amplitude == 0.0);
  CHECK(zero.residual_fraction == 0.0);

  CHECK_THROWS_AS(fit_sin2phi({0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0},
                              {0, 0, 0, 0, 0, 0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      fit_sin2phi({0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7},
                  {0, 0, 0, 0, 0, 0, 0, 0}),
      std::invalid_argument);
}
