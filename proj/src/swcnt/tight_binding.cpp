#include "cncas/swcnt/tight_binding.hpp"

#include <cmath>
#include <stdexcept>

#include "cncas/constants.hpp"

namespace cncas {
namespace {

void require_zigzag(const Chirality& ch) {
  validate_chirality(ch);
  if (ch.m != 0) {
    throw std::invalid_argument("tight binding: only zigzag (m = 0) tubes");
  }
}

}  // namespace

double zigzag_period(const Chirality& ch) {
  require_zigzag(ch);
  return 3.0 * cc_bond_m;
}

std::vector<double> tb_subbands(const Chirality& ch, double k,
                                double gamma0_eV) {
  require_zigzag(ch);
  const double a_t = 3.0 * cc_bond_m;
  if (std::abs(k) > pi / a_t * (1.0 + 1e-12)) {
    throw std::invalid_argument("tb_subbands: k outside the Brillouin zone");
  }
  std::vector<double> bands(2 * ch.n);
  const double ck = std::cos(0.5 * k * a_t);
  for (int q = 1; q <= 2 * ch.n; ++q) {
    const double cq = std::cos(pi * q / ch.n);
    const double arg = 1.0 + 4.0 * cq * ck + 4.0 * cq * cq;
    bands[q - 1] = gamma0_eV * std::sqrt(std::max(arg, 0.0));
  }
  return bands;
}

TbAmplitude tb_amplitude(const Chirality& ch, int q, double k,
                         double gamma0_eV) {
  require_zigzag(ch);
  if (q < 1 || q > 2 * ch.n) {
    throw std::invalid_argument("tb_amplitude: q out of range");
  }
  const double b = cc_bond_m;
  const double cq = std::cos(pi * q / ch.n);
  const std::complex<double> i_unit(0.0, 1.0);
  const std::complex<double> e_half = std::exp(i_unit * (0.5 * k * b));
  const std::complex<double> e_back = std::exp(-i_unit * (k * b));
  TbAmplitude out;
  out.h = gamma0_eV * (2.0 * cq * e_half + e_back);
  out.dh_dk = i_unit * gamma0_eV * b * (cq * e_half - e_back);
  return out;
}

}  // namespace cncas
