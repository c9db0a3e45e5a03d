#include "cncas/analysis/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cncas {

namespace {

void require_increasing_positive(const std::vector<double>& distance_m,
                                 const char* who) {
  if (distance_m.empty() || distance_m.front() <= 0.0) {
    throw std::invalid_argument(std::string(who) +
                                ": distances must be positive");
  }
  for (std::size_t i = 1; i < distance_m.size(); ++i) {
    if (distance_m[i] <= distance_m[i - 1]) {
      throw std::invalid_argument(std::string(who) +
                                  ": distances must be strictly increasing");
    }
  }
}

}  // namespace

ScalingResult local_log_slope(const std::vector<double>& distance_m,
                              const std::vector<double>& energy_J_m2) {
  if (distance_m.size() != energy_J_m2.size()) {
    throw std::invalid_argument("local_log_slope: size mismatch");
  }
  if (distance_m.size() < 3) {
    throw std::invalid_argument("local_log_slope: need at least 3 samples");
  }
  require_increasing_positive(distance_m, "local_log_slope");
  for (double e : energy_J_m2) {
    if (e == 0.0 || std::signbit(e) != std::signbit(energy_J_m2[0])) {
      throw std::invalid_argument(
          "local_log_slope: energies must share one sign");
    }
  }

  const std::size_t n = distance_m.size();
  std::vector<double> ld(n), le(n);
  for (std::size_t i = 0; i < n; ++i) {
    ld[i] = std::log(distance_m[i]);
    le[i] = std::log(std::fabs(energy_J_m2[i]));
  }

  ScalingResult out;
  out.distance_m.reserve(n - 2);
  out.exponent.reserve(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out.distance_m.push_back(distance_m[i]);
    out.exponent.push_back(-(le[i + 1] - le[i - 1]) / (ld[i + 1] - ld[i - 1]));
  }

  constexpr double threshold = 3.5;
  for (std::size_t i = 0; i + 1 < out.exponent.size(); ++i) {
    const double a = out.exponent[i] - threshold;
    const double b = out.exponent[i + 1] - threshold;
    if (a == 0.0) {
      out.transition_m = out.distance_m[i];
      break;
    }
    if (a * b < 0.0) {
      // Interpolate the crossing on the log-log grid.
      const double la = std::log(out.distance_m[i]);
      const double lb = std::log(out.distance_m[i + 1]);
      out.transition_m = std::exp(la + (lb - la) * a / (a - b));
      break;
    }
  }
  if (!out.transition_m && !out.exponent.empty() &&
      out.exponent.back() == threshold) {
    out.transition_m = out.distance_m.back();
  }
  return out;
}

CrossoverResult crossover_distance(
    const std::function<double(double)>& energy_a,
    const std::function<double(double)>& energy_b, double lower_m,
    double upper_m, double rel_tol) {
  if (!(lower_m > 0.0) || !(upper_m > lower_m)) {
    throw std::invalid_argument("crossover_distance: bad bracket");
  }
  if (!(rel_tol > 0.0)) {
    throw std::invalid_argument("crossover_distance: rel_tol must be positive");
  }

  const auto gap = [&](double d) {
    return std::fabs(energy_a(d)) - std::fabs(energy_b(d));
  };
  const auto relative = [&](double d, double g) {
    const double scale =
        std::max(std::fabs(energy_a(d)), std::fabs(energy_b(d)));
    return scale > 0.0 ? g / scale : g;
  };

  CrossoverResult out;
  out.lower_m = lower_m;
  out.upper_m = upper_m;

  double flo = gap(lower_m);
  double fhi = gap(upper_m);
  if (flo == 0.0 || fhi == 0.0) {
    out.found = true;
    out.distance_m = flo == 0.0 ? lower_m : upper_m;
    out.residual = 0.0;
    return out;
  }
  if ((flo > 0.0) == (fhi > 0.0)) {
    out.residual = relative(upper_m, fhi);
    return out;  // no sign change, no root invented
  }

  double lo = lower_m, hi = upper_m;
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    const double fm = gap(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  out.found = true;
  out.lower_m = lo;
  out.upper_m = hi;
  out.distance_m = 0.5 * (lo + hi);
  out.residual = relative(out.distance_m, gap(out.distance_m));
  return out;
}

CrossoverResult quantum_thermal_crossover(const Sheet& a, const Sheet& b,
                                          double temperature_K, double lower_m,
                                          double upper_m,
                                          EvaluationOptions opt) {
  if (!(temperature_K > 0.0)) {
    throw std::invalid_argument(
        "quantum_thermal_crossover: temperature must be positive");
  }
  opt.temperature_K = temperature_K;
  opt.mode = SpectralMode::quantum;
  opt.want_torque = false;
  const auto zero_point = [&](double d) {
    return casimir_energy(a, b, d, opt).energy;
  };
  const auto thermal = [&](double d) {
    return thermal_limit_energy(d, temperature_K);
  };
  return crossover_distance(zero_point, thermal, lower_m, upper_m);
}

std::optional<double> first_sign_change(
    const std::function<double(double)>& f,
    const std::vector<double>& distance_m, double rel_tol) {
  if (distance_m.size() < 2) {
    throw std::invalid_argument("first_sign_change: need at least 2 points");
  }
  require_increasing_positive(distance_m, "first_sign_change");
  if (!(rel_tol > 0.0)) {
    throw std::invalid_argument("first_sign_change: rel_tol must be positive");
  }

  double prev = f(distance_m[0]);
  if (prev == 0.0) return distance_m[0];
  for (std::size_t i = 1; i < distance_m.size(); ++i) {
    const double cur = f(distance_m[i]);
    if (cur == 0.0) return distance_m[i];
    if ((cur > 0.0) != (prev > 0.0)) {
      double lo = distance_m[i - 1], hi = distance_m[i];
      double flo = prev;
      while (hi - lo > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    prev = cur;
  }
  return std::nullopt;
}

std::optional<double> torque_phase_flip(const FilmSpec& film_a,
                                        const FilmSpec& film_b, double phi_rad,
                                        const std::vector<double>& distance_m,
                                        EvaluationOptions opt) {
  const FilmSheet a(normalize_film_spec(film_a), 0.0);
  const FilmSheet b(normalize_film_spec(film_b), phi_rad);
  opt.want_torque = true;
  const auto torque = [&](double d) {
    return casimir_torque(a, b, d, opt).torque;
  };
  return first_sign_change(torque, distance_m);
}

SinFitResult fit_sin2phi(const std::vector<double>& phi_rad,
                         const std::vector<double>& torque) {
  if (phi_rad.size() != torque.size()) {
    throw std::invalid_argument("fit_sin2phi: size mismatch");
  }
  if (phi_rad.size() < 8) {
    throw std::invalid_argument("fit_sin2phi: need at least 8 samples");
  }
  const auto [mn, mx] = std::minmax_element(phi_rad.begin(), phi_rad.end());
  if (*mx - *mn < 0.75 * M_PI) {
    throw std::invalid_argument("fit_sin2phi: samples must span [0, pi)");
  }

  double ss = 0.0, st = 0.0, tt = 0.0;
  for (std::size_t i = 0; i < phi_rad.size(); ++i) {
    const double s = std::sin(2.0 * phi_rad[i]);
    ss += s * s;
    st += s * torque[i];
    tt += torque[i] * torque[i];
  }

  SinFitResult out;
  if (tt == 0.0) return out;
  out.amplitude = ss > 0.0 ? st / ss : 0.0;
  double rss = 0.0;
  for (std::size_t i = 0; i < phi_rad.size(); ++i) {
    const double r = torque[i] - out.amplitude * std::sin(2.0 * phi_rad[i]);
    rss += r * r;
  }
  out.residual_fraction = std::sqrt(rss / tt);
  return out;
}

}  // namespace cncas
