#pragma once

namespace cncas {

// Chiral indices (n, m) with n >= 1 and 0 <= m <= n.
struct Chirality {
  int n = 12;
  int m = 0;
};

// Throws std::invalid_argument for indices outside the convention above.
void validate_chirality(const Chirality& ch);

// Tube radius in meters: (sqrt(3) b / 2 pi) sqrt(n^2 + n m + m^2).
double tube_radius(const Chirality& ch);

// Band-structure metallicity rule: (n - m) divisible by 3.
bool is_metallic(const Chirality& ch);

}  // namespace cncas
