#include "cncas/lifshitz/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "cncas/constants.hpp"
#include "cncas/film/array_conductivity.hpp"
#include "cncas/numerics/matsubara.hpp"
#include "cncas/numerics/quadrature.hpp"

namespace cncas {

namespace {

double sign_of(double v) { return static_cast<double>(v > 0.0) - (v < 0.0); }

// k-plane scale of one spectral term: the kappa -> 0 energy kernel
// integrates to exactly -zeta(3)/(8 pi D^2).
double kernel_scale(double D) { return zeta3 / (8.0 * pi * D * D); }

}  // namespace

FilmSheet::FilmSheet(FilmSpec fs, double axis_angle_rad)
    : fs_(std::move(fs)), angle_(axis_angle_rad) {
  if (fs_.delta_m <= 0.0 || fs_.d_m <= 0.0) {
    throw std::invalid_argument("FilmSheet: film spec must be normalized");
  }
}

ConductivityTensor FilmSheet::tensor(double k, double theta, double xi,
                                     double temperature_K) const {
  const double chi = theta - angle_;
  const double k_y = k * std::abs(std::sin(chi));
  const ConductivityTensor diag =
      film_tensor(imaginary_point(k_y, xi, temperature_K), fs_);
  return rotate_tensor(diag, chi);
}

ConductivityTensor FilmSheet::tensor_dangle(double k, double theta, double xi,
                                            double temperature_K) const {
  const double chi = theta - angle_;
  const double s = std::sin(chi);
  const double k_y = k * std::abs(s);
  const SpectralPoint pt = imaginary_point(k_y, xi, temperature_K);
  const ConductivityTensor diag = film_tensor(pt, fs_);
  // d/d(angle) = -d/d(chi): the rotation derivative at fixed entries plus
  // the k_y chain through the yy channel, dk_y/dchi = k sgn(sin) cos.
  const ConductivityTensor rot = rotate_tensor_dphi(diag, chi);
  ConductivityTensor along;
  along.k_y = k_y;
  along.xi = xi;
  along.yy =
      sigma_yy_array_tilde_dky(pt, fs_) * k * sign_of(s) * std::cos(chi);
  const ConductivityTensor chain = rotate_tensor(along, chi);
  ConductivityTensor out = diag;
  out.xx = -(rot.xx + chain.xx);
  out.xy = -(rot.xy + chain.xy);
  out.yx = -(rot.yx + chain.yx);
  out.yy = -(rot.yy + chain.yy);
  out.phi = chi;
  return out;
}

IsotropicSheet::IsotropicSheet(double s_tilde) : s_(s_tilde) {
  if (!(s_tilde > 0.0)) {
    throw std::invalid_argument("IsotropicSheet: conductivity must be positive");
  }
}

ConductivityTensor IsotropicSheet::tensor(double, double, double xi,
                                          double) const {
  ConductivityTensor t;
  t.xx = s_;
  t.yy = s_;
  t.xi = xi;
  return t;
}

ConductivityTensor IsotropicSheet::tensor_dangle(double, double, double xi,
                                                 double) const {
  ConductivityTensor t;
  t.xi = xi;
  return t;
}

double ideal_metal_energy(double distance_m) {
  if (!(distance_m > 0.0)) {
    throw std::invalid_argument("ideal_metal_energy: distance must be positive");
  }
  const double d3 = distance_m * distance_m * distance_m;
  return -pi * pi * hbar * c_light / (720.0 * d3);
}

double thermal_limit_energy(double distance_m, double temperature_K) {
  if (!(distance_m > 0.0) || !(temperature_K > 0.0)) {
    throw std::invalid_argument("thermal_limit_energy: bad arguments");
  }
  return -zeta3 * k_boltzmann * temperature_K /
         (16.0 * pi * distance_m * distance_m);
}

namespace {

struct CavityFactor {
  double x = 0.0;       // exp(-2 D q)
  double lambda = 1.0;  // q / kappa
};

bool cavity_factor(double D, double kappa, double k, CavityFactor* out) {
  const double q = std::hypot(kappa, k);
  const double arg = 2.0 * D * q;
  if (arg > 700.0) return false;
  out->x = std::exp(-arg);
  out->lambda = q / kappa;
  return true;
}

}  // namespace

double energy_integrand(const Sheet& a, const Sheet& b, double distance_m,
                        double kappa, double temperature_K, double k,
                        double theta) {
  CavityFactor cf;
  if (!cavity_factor(distance_m, kappa, k, &cf)) return 0.0;
  const double xi = c_light * kappa;
  const Mat2 ra = fresnel_matrix(a.tensor(k, theta, xi, temperature_K), cf.lambda);
  const Mat2 rb = fresnel_matrix(b.tensor(k, theta, xi, temperature_K), cf.lambda);
  const Mat2 ab = mat2_mul(ra, rb);
  // det(1 - x A) = 1 - x tr A + x^2 det A, kept in log1p form.
  return std::log1p(-cf.x * mat2_trace(ab) + cf.x * cf.x * mat2_det(ab));
}

double torque_integrand(const Sheet& a, const Sheet& b, double distance_m,
                        double kappa, double temperature_K, double k,
                        double theta) {
  CavityFactor cf;
  if (!cavity_factor(distance_m, kappa, k, &cf)) return 0.0;
  const double xi = c_light * kappa;
  const ConductivityTensor sb = b.tensor(k, theta, xi, temperature_K);
  const Mat2 ra = fresnel_matrix(a.tensor(k, theta, xi, temperature_K), cf.lambda);
  const Mat2 rb = fresnel_matrix(sb, cf.lambda);
  const Mat2 drb = fresnel_matrix_derivative(
      sb, b.tensor_dangle(k, theta, xi, temperature_K), cf.lambda);
  const Mat2 ab = mat2_mul(ra, rb);
  const Mat2 num = mat2_mul(ra, drb);
  const double det_m = 1.0 - cf.x * mat2_trace(ab) +
                       cf.x * cf.x * mat2_det(ab);
  // tr(M^{-1} N) for M = 1 - x A via Cayley-Hamilton.
  const double tr = ((1.0 - cf.x * mat2_trace(ab)) * mat2_trace(num) +
                     cf.x * mat2_trace(mat2_mul(ab, num))) /
                    det_m;
  return cf.x * tr;
}

Mat2 reflection_derivative(const Sheet& sh, double k, double theta, double xi,
                           double temperature_K, double kappa) {
  const double q = std::hypot(kappa, k);
  return fresnel_matrix_derivative(sh.tensor(k, theta, xi, temperature_K),
                                   sh.tensor_dangle(k, theta, xi, temperature_K),
                                   q / kappa);
}

namespace {

// One spectral term's k-plane integral; `ok` is cleared when the quadrature
// reports non-convergence.  Terms suppressed by exp(-2 D kappa) get their
// tolerances relaxed by exp(D kappa): their absolute error budget within
// the spectral sum shrinks like the terms themselves, so full relative
// accuracy in the deep tail would be wasted work.  Terms with kappa << 1/D
// enter the integral with weight ~ kappa and get a 1/sqrt(2 D kappa)
// relaxation: the budget stays bounded while the lambda = q/kappa angular
// boundary layers stop forcing unbounded refinement.
double spectral_integral(const Sheet& a, const Sheet& b, double D,
                         double kappa, double temperature_K, bool torque,
                         double rel_tol, bool* ok) {
  const double suppression = std::max(std::exp(-2.0 * D * kappa), 1e-250);
  const double relax = std::exp(std::min(30.0, D * kappa)) *
                       std::sqrt(1.0 + 0.5 / (D * kappa));
  const double rel = std::min(1e-2, rel_tol * relax);
  PolarOptions po;
  po.rel_tol = rel;
  po.abs_tol = kernel_scale(D) * rel * 0.1 * suppression;
  po.theta_rel_tol = 0.3 * rel;
  po.theta_abs_floor = 0.1 * rel * suppression;
  po.radial_scale = std::max(0.5 / D, 0.7 * std::sqrt(kappa / D));
  po.pi_periodic = true;
  po.theta_kinks = a.theta_kinks();
  for (double ang : b.theta_kinks()) po.theta_kinks.push_back(ang);
  const IntegralResult r = integrate_polar_2d(
      [&](double k, double theta) {
        return torque
                   ? torque_integrand(a, b, D, kappa, temperature_K, k, theta)
                   : energy_integrand(a, b, D, kappa, temperature_K, k, theta);
      },
      po);
  if (!r.converged) *ok = false;
  return r.value;
}

void check_n0_kernel(const Sheet& a, const Sheet& b, double D,
                     double temperature_K, double rel_tol) {
  bool ok = true;
  const double probe =
      spectral_integral(a, b, D, 1e-5 / D, temperature_K, false, rel_tol, &ok);
  const double ref = -kernel_scale(D);
  if (!ok || std::abs(probe - ref) > 0.02 * std::abs(ref)) {
    std::fprintf(stderr,
                 "warning: small-kappa term %.6e deviates from the "
                 "kappa -> 0 kernel %.6e\n",
                 probe, ref);
  }
}

LifshitzResult eval_matsubara(const Sheet& a, const Sheet& b, double D,
                              const EvaluationOptions& opt) {
  LifshitzResult out;
  bool ok = true;
  MatsubaraSpec ms;
  ms.temperature_K = opt.temperature_K;
  ms.max_terms = opt.max_terms;
  ms.absolute_floor = 1e-12 * kernel_scale(D);
  // Terms decay like exp(-2 D xi_n / c); run at least to 2 D kappa_n = 20 so
  // the slowly varying prefix cannot trigger the tail stop.
  const double lambda_t =
      hbar * c_light / (2.0 * pi * k_boltzmann * opt.temperature_K);
  ms.min_terms = static_cast<int>(std::min<double>(
      opt.max_terms, std::ceil(10.0 * lambda_t / D)));
  const MatsubaraResult er = matsubara_sum(
      [&](double xi, int n) {
        if (n == 0) return -kernel_scale(D);
        return spectral_integral(a, b, D, xi / c_light, opt.temperature_K,
                                 false, opt.rel_tol, &ok);
      },
      ms);
  out.energy = er.value;
  out.terms_used = er.terms_used;
  ok = ok && er.converged;
  if (opt.want_torque) {
    const MatsubaraResult tr = matsubara_sum(
        [&](double xi, int n) {
          if (n == 0) return 0.0;
          return spectral_integral(a, b, D, xi / c_light, opt.temperature_K,
                                   true, opt.rel_tol, &ok);
        },
        ms);
    out.torque = tr.value;
    ok = ok && tr.converged;
  }
  if (opt.debug_checks) {
    check_n0_kernel(a, b, D, opt.temperature_K, opt.rel_tol);
  }
  out.converged = ok;
  return out;
}

LifshitzResult eval_quantum(const Sheet& a, const Sheet& b, double D,
                            const EvaluationOptions& opt) {
  LifshitzResult out;
  bool ok = true;
  const double pref = hbar * c_light / (2.0 * pi);
  AdaptiveOptions ao;
  ao.rel_tol = opt.rel_tol;
  ao.abs_tol = 0.01 * opt.rel_tol * kernel_scale(D) / (2.0 * D);
  // The spectral measure is the zero-point integral; temperature_K still
  // reaches the sheets so their response can carry thermal occupation.
  const double T = opt.temperature_K;
  const IntegralResult er = integrate_semi_infinite(
      [&](double kappa) {
        return spectral_integral(a, b, D, kappa, T, false,
                                 0.3 * opt.rel_tol, &ok);
      },
      1.0 / (2.0 * D), ao);
  out.energy = pref * er.value;
  ok = ok && er.converged;
  if (opt.want_torque) {
    const IntegralResult tr = integrate_semi_infinite(
        [&](double kappa) {
          return spectral_integral(a, b, D, kappa, T, true,
                                   0.3 * opt.rel_tol, &ok);
        },
        1.0 / (2.0 * D), ao);
    out.torque = pref * tr.value;
    ok = ok && tr.converged;
  }
  if (opt.debug_checks) check_n0_kernel(a, b, D, T, opt.rel_tol);
  out.converged = ok;
  return out;
}

}  // namespace

LifshitzResult casimir_energy(const Sheet& a, const Sheet& b,
                              double distance_m,
                              const EvaluationOptions& opt) {
  if (!(distance_m > 0.0)) {
    throw std::invalid_argument("casimir_energy: distance must be positive");
  }
  switch (opt.mode) {
    case SpectralMode::thermal: {
      LifshitzResult out;
      out.energy = thermal_limit_energy(distance_m, opt.temperature_K);
      out.torque = 0.0;
      return out;
    }
    case SpectralMode::quantum:
      return eval_quantum(a, b, distance_m, opt);
    case SpectralMode::matsubara:
      if (!(opt.temperature_K > 0.0)) {
        throw std::invalid_argument(
            "casimir_energy: matsubara mode needs a positive temperature");
      }
      return eval_matsubara(a, b, distance_m, opt);
  }
  throw std::logic_error("casimir_energy: unknown mode");
}

LifshitzResult casimir_torque(const Sheet& a, const Sheet& b,
                              double distance_m, EvaluationOptions opt) {
  opt.want_torque = true;
  return casimir_energy(a, b, distance_m, opt);
}

}  // namespace cncas
