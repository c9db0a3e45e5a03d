#pragma once

#include <complex>
#include <vector>

#include "cncas/swcnt/chirality.hpp"

namespace cncas {

// Translation period of a zigzag tube along its axis: a_t = 3 b.
double zigzag_period(const Chirality& ch);

// Zone-folded nearest-neighbor pi-band energies of a zigzag tube:
//   E_q(k) = gamma0 sqrt(1 + 4 cos(q pi/n) cos(k a_t/2) + 4 cos^2(q pi/n)),
// q = 1..2n, |k| <= pi/a_t.  Returns the 2n conduction energies in eV; the
// valence bands are their mirror images.  Rejects m != 0.
std::vector<double> tb_subbands(const Chirality& ch, double k, double gamma0_eV);

// Off-diagonal Bloch amplitude of subband q and its k-derivative, used for
// interband matrix elements: h = gamma0 (2 cos(q pi/n) e^{i k b/2} + e^{-i k b}).
struct TbAmplitude {
  std::complex<double> h;       // eV
  std::complex<double> dh_dk;   // eV * m
};
TbAmplitude tb_amplitude(const Chirality& ch, int q, double k, double gamma0_eV);

}  // namespace cncas
