#include "cncas/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "cncas/constants.hpp"

namespace cncas {
namespace {

// 15-point Kronrod abscissae; entries at odd index (and the center) are the
// embedded 7-point Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelEstimate {
  double value;
  double error;
};

PanelEstimate gauss_kronrod_panel(const std::function<double(double)>& f,
                                  double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  return {resk * half, std::abs(resk - resg) * half};
}

struct Panel {
  double a;
  double b;
  double value;
  double error;
  std::uint64_t seq;
};

struct PanelWorse {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.seq > y.seq;  // older panel wins ties
  }
};

double stable_sum(std::vector<double>& xs) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

IntegralResult integrate_adaptive(const std::function<double(double)>& f,
                                  double a, double b,
                                  const AdaptiveOptions& opt) {
  if (!(a <= b)) throw std::invalid_argument("integrate_adaptive: a > b");
  if (a == b) return {0.0, 0.0, true};

  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> queue;
  std::uint64_t next_seq = 0;
  const PanelEstimate first = gauss_kronrod_panel(f, a, b);
  queue.push({a, b, first.value, first.error, next_seq++});
  double total_value = first.value;
  double total_error = first.error;
  int panels = 1;

  while (total_error > std::max(opt.abs_tol, opt.rel_tol * std::abs(total_value)) &&
         panels < opt.max_intervals) {
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval at floating-point resolution; keep it as is.
      Panel pinned = worst;
      pinned.error = 0.0;
      total_error -= worst.error;
      queue.push(pinned);
      continue;
    }
    const PanelEstimate left = gauss_kronrod_panel(f, worst.a, mid);
    const PanelEstimate right = gauss_kronrod_panel(f, mid, worst.b);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push({worst.a, mid, left.value, left.error, next_seq++});
    queue.push({mid, worst.b, right.value, right.error, next_seq++});
    ++panels;
  }

  // Re-accumulate in left-endpoint order so the result does not depend on
  // the refinement history.
  std::vector<Panel> final_panels;
  final_panels.reserve(queue.size());
  while (!queue.empty()) {
    final_panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(final_panels.begin(), final_panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  std::vector<double> values, errors;
  values.reserve(final_panels.size());
  errors.reserve(final_panels.size());
  for (const Panel& p : final_panels) {
    values.push_back(p.value);
    errors.push_back(p.error);
  }
  IntegralResult out;
  out.value = stable_sum(values);
  out.error = stable_sum(errors);
  out.converged =
      out.error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(out.value));
  return out;
}

IntegralResult integrate_semi_infinite(const std::function<double(double)>& f,
                                       double scale,
                                       const AdaptiveOptions& opt) {
  if (!(scale > 0.0)) {
    throw std::invalid_argument("integrate_semi_infinite: scale must be > 0");
  }
  const auto g = [&f, scale](double u) {
    const double eu = std::exp(u);
    return f(scale * (eu - 1.0)) * scale * eu;
  };
  AdaptiveOptions panel_opt = opt;
  panel_opt.max_intervals = std::max(64, opt.max_intervals / 8);

  constexpr double kMaxU = 60.0;
  double value = 0.0;
  double error = 0.0;
  bool all_panels_ok = true;
  int negligible_streak = 0;
  bool tail_reached = false;
  for (double u0 = 0.0; u0 < kMaxU; u0 += 1.0) {
    panel_opt.abs_tol = std::max(
        opt.abs_tol, 0.1 * opt.rel_tol * std::abs(value));
    const IntegralResult part = integrate_adaptive(g, u0, u0 + 1.0, panel_opt);
    value += part.value;
    error += part.error;
    all_panels_ok = all_panels_ok && part.converged;
    const double cutoff = std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
    if (std::abs(part.value) <= cutoff) {
      if (++negligible_streak >= 2 && u0 >= 2.0) {
        tail_reached = true;
        break;
      }
    } else {
      negligible_streak = 0;
    }
  }
  return {value, error, all_panels_ok && tail_reached};
}

double integrate_or_throw(const std::function<double(double)>& f,
                          double a, double b,
                          const AdaptiveOptions& opt) {
  const IntegralResult r = integrate_adaptive(f, a, b, opt);
  if (!r.converged) {
    throw std::runtime_error("integrate_adaptive did not converge");
  }
  return r.value;
}

namespace {

// Positive-half Gauss-Legendre abscissae/weights on [-1, 1].
struct GlPoint {
  double x;
  double w;
};
constexpr GlPoint kGl8[4] = {
    {0.18343464249564978, 0.36268378337836177},
    {0.52553240991632899, 0.31370664587788705},
    {0.79666647741362673, 0.22238103445337434},
    {0.96028985649753618, 0.10122853629037669}};
constexpr GlPoint kGl16[8] = {
    {0.095012509837637454, 0.18945061045506859},
    {0.28160355077925892, 0.18260341504492361},
    {0.45801677765722737, 0.16915651939500262},
    {0.61787624440264377, 0.14959598881657676},
    {0.755404408355003, 0.12462897125553403},
    {0.86563120238783176, 0.095158511682492591},
    {0.9445750230732326, 0.062253523938647706},
    {0.98940093499164994, 0.027152459411754037}};
constexpr GlPoint kGl32[16] = {
    {0.04830766568773831, 0.096540088514727812},
    {0.14447196158279649, 0.095638720079274833},
    {0.23928736225213706, 0.093844399080804566},
    {0.33186860228212767, 0.091173878695763863},
    {0.42135127613063533, 0.087652093004403908},
    {0.50689990893222936, 0.083311924226946846},
    {0.5877157572407623, 0.078193895787070311},
    {0.66304426693021523, 0.072345794108848449},
    {0.73218211874028971, 0.065822222776361752},
    {0.79448379596794239, 0.058684093478535704},
    {0.84936761373256997, 0.050998059262376244},
    {0.8963211557660522, 0.042835898022226426},
    {0.93490607593773967, 0.034273862913021626},
    {0.96476225558750639, 0.025392065309262427},
    {0.98561151154526838, 0.016274394730905965},
    {0.99726386184948157, 0.0070186100094692984}};

// Nodes on [0, 1] with weights summing to 1.  Levels 0..2 are GL8/16/32;
// beyond that, 2^(level-2) composite GL32 panels.
void append_tau_rule(int level, double lo, double hi,
                     std::vector<GlPoint>* out) {
  const GlPoint* table = level == 0 ? kGl8 : (level == 1 ? kGl16 : kGl32);
  const int half = level == 0 ? 4 : (level == 1 ? 8 : 16);
  const double mid = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  for (int i = 0; i < half; ++i) {
    out->push_back({mid - h * table[i].x, table[i].w * h});
    out->push_back({mid + h * table[i].x, table[i].w * h});
  }
}

std::vector<GlPoint> tau_rule(int level) {
  std::vector<GlPoint> out;
  if (level <= 2) {
    append_tau_rule(level, 0.0, 1.0, &out);
    return out;
  }
  const int panels = 1 << (level - 2);
  out.reserve(32 * panels);
  for (int p = 0; p < panels; ++p) {
    append_tau_rule(2, static_cast<double>(p) / panels,
                    static_cast<double>(p + 1) / panels, &out);
  }
  return out;
}

struct AngularRule {
  std::vector<double> theta;
  std::vector<double> weight;  // sums to 1
};

// Per-segment substitution theta = a + (b - a) sin^2(pi tau / 2): analytic
// in tau, endpoint derivative zero, so |theta - a| kinks at segment ends
// become smooth and Gauss-Legendre converges spectrally.
AngularRule build_angular_rule(const std::vector<double>& kinks, double period,
                               int level) {
  std::vector<double> cuts;
  for (double a : kinks) {
    double w = std::fmod(a, period);
    if (w < 0.0) w += period;
    cuts.push_back(w);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [period](double a, double b) {
                           return std::abs(a - b) < 1e-9 * period;
                         }),
             cuts.end());
  if (cuts.empty()) cuts.push_back(0.0);
  if (cuts.size() > 1 && cuts.back() > period - 1e-9 * period &&
      cuts.front() < 1e-9 * period) {
    cuts.pop_back();  // same cut seen from both ends of the period
  }

  const std::vector<GlPoint> taus = tau_rule(level);
  AngularRule rule;
  rule.theta.reserve(taus.size() * cuts.size());
  rule.weight.reserve(taus.size() * cuts.size());
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = i + 1 < cuts.size() ? cuts[i + 1] : cuts[0] + period;
    const double width = b - a;
    if (width < 1e-9 * period) continue;
    for (const GlPoint& t : taus) {
      const double s = std::sin(0.5 * pi * t.x);
      rule.theta.push_back(a + width * s * s);
      rule.weight.push_back(t.w * width * 0.5 * pi * std::sin(pi * t.x) /
                            period);
    }
  }
  return rule;
}

}  // namespace

IntegralResult integrate_polar_2d(const std::function<double(double, double)>& f,
                                  const PolarOptions& opt) {
  const double period = opt.pi_periodic ? pi : 2.0 * pi;

  const auto average_with = [&](const AngularRule& rule, double k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.theta.size(); ++i) {
      sum += rule.weight[i] * f(k, rule.theta[i]);
    }
    return sum;
  };

  // Pick the rule level on probe radii, then hold it fixed.
  const double probes[3] = {0.5 * opt.radial_scale, 1.5 * opt.radial_scale,
                            4.0 * opt.radial_scale};
  AngularRule rule = build_angular_rule(opt.theta_kinks, period, 0);
  double avg[3];
  for (int p = 0; p < 3; ++p) avg[p] = average_with(rule, probes[p]);
  bool theta_converged = false;
  for (int level = 1; !theta_converged; ++level) {
    AngularRule next = build_angular_rule(opt.theta_kinks, period, level);
    if (static_cast<int>(next.theta.size()) > opt.max_theta_points) break;
    double scale = 0.0;
    for (int p = 0; p < 3; ++p) scale = std::max(scale, std::abs(avg[p]));
    bool all_close = true;
    double navg[3];
    for (int p = 0; p < 3; ++p) {
      navg[p] = average_with(next, probes[p]);
      scale = std::max(scale, std::abs(navg[p]));
    }
    for (int p = 0; p < 3; ++p) {
      if (std::abs(navg[p] - avg[p]) >
          std::max(opt.theta_abs_floor, opt.theta_rel_tol * scale)) {
        all_close = false;
      }
    }
    rule = std::move(next);
    for (int p = 0; p < 3; ++p) avg[p] = navg[p];
    theta_converged = all_close;
  }

  AdaptiveOptions radial;
  // One factor of 2pi separates the radial integrand from the final result.
  radial.abs_tol = opt.abs_tol * 2.0 * pi;
  radial.rel_tol = opt.rel_tol;
  const IntegralResult r = integrate_semi_infinite(
      [&](double k) { return k * average_with(rule, k); }, opt.radial_scale,
      radial);
  return {r.value / (2.0 * pi), r.error / (2.0 * pi),
          r.converged && theta_converged};
}

}  // namespace cncas
