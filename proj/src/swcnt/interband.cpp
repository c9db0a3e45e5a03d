#include "cncas/swcnt/interband.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "cncas/numerics/kramers_kronig.hpp"
#include "cncas/swcnt/tight_binding.hpp"

namespace cncas {
namespace {

constexpr double kGridMinEv = 1e-3;
constexpr double kGridMaxEv = 100.0;
constexpr int kGridPoints = 4096;
constexpr double kBinWidthEv = 2e-3;
constexpr int kAxialPoints = 20000;  // trapezoid intervals over half the zone

double lorentz_delta(double y, double gamma) {
  return gamma / (pi * (y * y + gamma * gamma));
}

struct Transition {
  double energy_eV;  // E_cv = 2 E_q
  double weight;     // sum of dk * M^2 over the bin
};

}  // namespace

struct InterbandResponse::Impl {
  Chirality ch;
  ElectronicParams ep;
  InterbandModel model;
  bool zero_model = false;

  std::vector<Transition> transitions;  // tight_binding_kubo

  std::vector<double> omega_rad;  // tb + tabulated: sampled spectrum
  std::vector<double> re_sigma;   // velocity units
  std::vector<double> im_sigma;   // tabulated only

  mutable std::mutex memo_mutex;
  mutable std::unordered_map<std::uint64_t, double> memo;

  void build_tight_binding();
  void load_table();
  std::complex<double> transition_sum(double x_eV) const;
};

// Kubo-Greenwood weights binned over transition energy.  The spectral sum is
//   sigma(omega) = (alpha c / (pi x R)) sum_b w_b [d_G(x - E_b) - d_G(x + E_b)]
// with x = hbar omega in eV and w_b accumulating dk * M^2, where
// M = Im(h' conj(h))/|h| is the interband velocity element in eV*m.  The
// odd-in-x pair keeps Re sigma >= 0 and removes the spurious 1/omega
// divergence a single Lorentzian would cause.
void InterbandResponse::Impl::build_tight_binding() {
  const double R = tube_radius(ch);
  const double a_t = zigzag_period(ch);
  const double dk = pi / a_t / kAxialPoints;
  const double e_max = 6.0 * ep.gamma0_eV + 1.0;
  std::vector<double> bin_weight(
      static_cast<std::size_t>(e_max / kBinWidthEv) + 2, 0.0);

  for (int q = 1; q <= 2 * ch.n; ++q) {
    for (int ik = 0; ik <= kAxialPoints; ++ik) {
      const double k = ik * dk;
      const TbAmplitude amp = tb_amplitude(ch, q, k, ep.gamma0_eV);
      const double e_q = std::abs(amp.h);
      if (e_q < 1e-14) continue;       // band crossing, zero measure
      if (e_q < ep.mu_eV) continue;    // final state occupied
      const double m_el =
          std::imag(amp.dh_dk * std::conj(amp.h)) / e_q;  // eV * m
      const double trap = (ik == 0 || ik == kAxialPoints) ? 0.5 : 1.0;
      const std::size_t bin =
          static_cast<std::size_t>(2.0 * e_q / kBinWidthEv);
      bin_weight[bin] += trap * dk * m_el * m_el;
    }
  }

  for (std::size_t b = 0; b < bin_weight.size(); ++b) {
    if (bin_weight[b] > 0.0) {
      transitions.push_back({(b + 0.5) * kBinWidthEv, bin_weight[b]});
    }
  }

  omega_rad.resize(kGridPoints);
  re_sigma.resize(kGridPoints);
  const double step = std::log(kGridMaxEv / kGridMinEv) / (kGridPoints - 1);
  const double gamma = model.broadening_eV;
  for (int i = 0; i < kGridPoints; ++i) {
    const double x = kGridMinEv * std::exp(i * step);
    omega_rad[i] = x / hbar_eVs;
    double s = 0.0;
    for (const Transition& t : transitions) {
      s += t.weight *
           (lorentz_delta(x - t.energy_eV, gamma) -
            lorentz_delta(x + t.energy_eV, gamma));
    }
    re_sigma[i] = fine_structure * c_light / (pi * x * R) * s;
  }
}

// Two poles per transition, both in the lower half plane.  The bracket is
// purely imaginary at x = 0, so dividing by x alone would plant a spurious
// 1/x pole in Im sigma; subtracting the x = 0 value removes it while leaving
// Re sigma untouched, and the result decays at infinity, so Re and Im stay
// a Kramers-Kronig pair.
std::complex<double> InterbandResponse::Impl::transition_sum(
    double x_eV) const {
  const std::complex<double> i_unit(0.0, 1.0);
  const double gamma = model.broadening_eV;
  std::complex<double> s = 0.0;
  for (const Transition& t : transitions) {
    const double e = t.energy_eV;
    s += t.weight *
         ((i_unit / pi) * (1.0 / std::complex<double>(x_eV - e, gamma) -
                           1.0 / std::complex<double>(x_eV + e, gamma)) +
          i_unit * (2.0 / pi) * e / (e * e + gamma * gamma));
  }
  const double R = tube_radius(ch);
  return fine_structure * c_light / (pi * x_eV * R) * s;
}

void InterbandResponse::Impl::load_table() {
  std::ifstream in(model.table_path);
  if (!in) {
    throw std::runtime_error("interband table: cannot open " + model.table_path);
  }
  const double sigma0 = fine_structure * c_light / 4.0;
  std::string line;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    for (char& c : line) {
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    }
    std::istringstream row(line);
    double w_eV, re, im;
    if (!(row >> w_eV >> re >> im)) {
      if (!header_skipped && !line.empty()) {
        header_skipped = true;  // column names
        continue;
      }
      if (line.find_first_not_of(" \r\n") == std::string::npos) continue;
      throw std::runtime_error("interband table: malformed row: " + line);
    }
    omega_rad.push_back(w_eV / hbar_eVs);
    re_sigma.push_back(re * sigma0);
    im_sigma.push_back(im * sigma0);
  }
  if (omega_rad.size() < 2) {
    throw std::invalid_argument("interband table: need at least two rows");
  }
  for (std::size_t i = 0; i + 1 < omega_rad.size(); ++i) {
    if (!(omega_rad[i] < omega_rad[i + 1])) {
      throw std::invalid_argument("interband table: omega must increase");
    }
  }
  for (double r : re_sigma) {
    if (!(r >= 0.0)) {
      throw std::invalid_argument("interband table: Re sigma must be >= 0");
    }
  }
}

InterbandResponse::InterbandResponse(const Chirality& ch,
                                     const ElectronicParams& ep,
                                     const InterbandModel& model)
    : impl_(std::make_unique<Impl>()) {
  impl_->ch = ch;
  impl_->ep = ep;
  impl_->model = model;
  switch (model.variant) {
    case InterbandVariant::tight_binding_kubo:
      impl_->build_tight_binding();
      break;
    case InterbandVariant::lorentz_oscillators:
      if (model.oscillators.empty()) {
        std::fprintf(stderr,
                     "warning: empty oscillator list, interband "
                     "conductivity is zero\n");
        impl_->zero_model = true;
      }
      for (const LorentzOscillator& o : model.oscillators) {
        if (o.strength < 0.0 || o.width_eV <= 0.0 || o.center_eV <= 0.0) {
          throw std::invalid_argument("interband oscillator: invalid line");
        }
      }
      break;
    case InterbandVariant::tabulated:
      impl_->load_table();
      break;
  }
}

InterbandResponse::~InterbandResponse() = default;

std::complex<double> InterbandResponse::real_axis(double omega) const {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("interband real_axis: omega must be > 0");
  }
  switch (impl_->model.variant) {
    case InterbandVariant::tight_binding_kubo:
      return impl_->transition_sum(hbar_eVs * omega);
    case InterbandVariant::lorentz_oscillators: {
      std::complex<double> s = 0.0;
      const double sigma0 = fine_structure * c_light / 4.0;
      for (const LorentzOscillator& o : impl_->model.oscillators) {
        const double w0 = o.center_eV / hbar_eVs;
        const double g = o.width_eV / hbar_eVs;
        const double amp = o.strength * sigma0 * g;
        s += -std::complex<double>(0.0, omega) * amp /
             std::complex<double>(w0 * w0 - omega * omega, -g * omega);
      }
      return s;
    }
    case InterbandVariant::tabulated: {
      const auto& w = impl_->omega_rad;
      const auto it = std::lower_bound(w.begin(), w.end(), omega);
      std::size_t hi = static_cast<std::size_t>(it - w.begin());
      if (hi == 0) hi = 1;
      if (hi >= w.size()) hi = w.size() - 1;
      const std::size_t lo = hi - 1;
      double f = (omega - w[lo]) / (w[hi] - w[lo]);
      f = std::clamp(f, 0.0, 1.0);
      return {impl_->re_sigma[lo] + f * (impl_->re_sigma[hi] - impl_->re_sigma[lo]),
              impl_->im_sigma[lo] + f * (impl_->im_sigma[hi] - impl_->im_sigma[lo])};
    }
  }
  return 0.0;
}

double InterbandResponse::imag_axis(double xi) const {
  if (!(xi >= 0.0)) {
    throw std::invalid_argument("interband imag_axis: xi must be >= 0");
  }
  if (impl_->zero_model) return 0.0;
  if (impl_->model.variant == InterbandVariant::lorentz_oscillators) {
    double s = 0.0;
    const double sigma0 = fine_structure * c_light / 4.0;
    for (const LorentzOscillator& o : impl_->model.oscillators) {
      const double w0 = o.center_eV / hbar_eVs;
      const double g = o.width_eV / hbar_eVs;
      s += o.strength * sigma0 * g * xi / (w0 * w0 + xi * xi + g * xi);
    }
    return s;
  }
  if (xi == 0.0) return impl_->re_sigma.front();  // continuation limit

  const std::uint64_t key = std::bit_cast<std::uint64_t>(xi);
  {
    std::lock_guard<std::mutex> lk(impl_->memo_mutex);
    const auto it = impl_->memo.find(key);
    if (it != impl_->memo.end()) return it->second;
  }
  const double value =
      kk_to_imaginary_axis(impl_->omega_rad, impl_->re_sigma, xi);
  std::lock_guard<std::mutex> lk(impl_->memo_mutex);
  impl_->memo.emplace(key, value);
  return value;
}

double InterbandResponse::tail_fraction(double xi) const {
  if (impl_->zero_model ||
      impl_->model.variant == InterbandVariant::lorentz_oscillators) {
    return 0.0;
  }
  KkTailInfo info;
  kk_to_imaginary_axis(impl_->omega_rad, impl_->re_sigma, xi, &info);
  return info.tail_fraction;
}

namespace {

std::string registry_key(const Chirality& ch, const ElectronicParams& ep,
                         const InterbandModel& model) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d,%d|mu=%.17g|g0=%.17g|G=%.17g|v=%d", ch.n,
                ch.m, ep.mu_eV, ep.gamma0_eV, model.broadening_eV,
                static_cast<int>(model.variant));
  std::string key = buf;
  for (const LorentzOscillator& o : model.oscillators) {
    std::snprintf(buf, sizeof buf, "|%.17g,%.17g,%.17g", o.center_eV,
                  o.strength, o.width_eV);
    key += buf;
  }
  key += "|" + model.table_path;
  return key;
}

}  // namespace

std::shared_ptr<const InterbandResponse> interband_response(
    const Chirality& ch, const ElectronicParams& ep,
    const InterbandModel& model) {
  static std::mutex registry_mutex;
  static std::map<std::string, std::shared_ptr<const InterbandResponse>> registry;
  const std::string key = registry_key(ch, ep, model);
  std::lock_guard<std::mutex> lk(registry_mutex);
  auto& slot = registry[key];
  if (!slot) slot = std::make_shared<InterbandResponse>(ch, ep, model);
  return slot;
}

std::complex<double> sigma_inter_real_axis(const SpectralPoint& pt,
                                           const Chirality& ch,
                                           const ElectronicParams& ep,
                                           const InterbandModel& model) {
  if (pt.axis != FrequencyAxis::real) {
    throw std::invalid_argument("sigma_inter_real_axis: expects a real-axis point");
  }
  return interband_response(ch, ep, model)->real_axis(pt.frequency);
}

double sigma_inter_imag_axis(const SpectralPoint& pt, const Chirality& ch,
                             const ElectronicParams& ep,
                             const InterbandModel& model) {
  if (pt.axis != FrequencyAxis::imaginary) {
    throw std::invalid_argument(
        "sigma_inter_imag_axis: expects an imaginary-axis point");
  }
  return interband_response(ch, ep, model)->imag_axis(pt.frequency);
}

}  // namespace cncas
