#include "cncas/swcnt/chirality.hpp"

#include <cmath>
#include <stdexcept>

#include "cncas/constants.hpp"

namespace cncas {

void validate_chirality(const Chirality& ch) {
  if (ch.n < 1) throw std::invalid_argument("chirality: n must be >= 1");
  if (ch.m < 0 || ch.m > ch.n) {
    throw std::invalid_argument("chirality: need 0 <= m <= n");
  }
}

double tube_radius(const Chirality& ch) {
  validate_chirality(ch);
  const double nn = ch.n, mm = ch.m;
  return std::sqrt(3.0) * cc_bond_m / (2.0 * pi) *
         std::sqrt(nn * nn + nn * mm + mm * mm);
}

bool is_metallic(const Chirality& ch) {
  validate_chirality(ch);
  return (ch.n - ch.m) % 3 == 0;
}

}  // namespace cncas
