#pragma once

// Physical constants (SI) and a few exact mathematical values.
//
// Surface conductivities are carried through the code as the dimensionless
// combination 2*pi*sigma/c (sigma in Gaussian velocity units).  Charge never
// appears on its own: e^2 in Gaussian formulas is replaced by
// alpha*hbar*c, which keeps every expression SI-evaluable.

namespace cncas {

inline constexpr double c_light = 2.99792458e8;        // m/s, exact
inline constexpr double hbar = 1.054571817e-34;        // J*s
inline constexpr double hbar_eVs = 6.582119569e-16;    // eV*s
inline constexpr double k_boltzmann = 1.380649e-23;    // J/K, exact
inline constexpr double electron_volt = 1.602176634e-19;  // J, exact
inline constexpr double electron_mass = 9.1093837015e-31; // kg
inline constexpr double fine_structure = 7.2973525693e-3; // e^2/(hbar c), Gaussian

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double euler_gamma = 0.57721566490153286;
inline constexpr double zeta3 = 1.2020569031595943;

// Carbon-carbon bond length fixing all nanotube geometry.
inline constexpr double cc_bond_m = 0.142e-9;

// e^2 in SI-evaluable Gaussian form: alpha*hbar*c  [J*m].
inline constexpr double e2_gauss = fine_structure * hbar * c_light;

// Conductivity normalization sigma_0 = alpha*c/4 expressed in stored units:
// 2*pi*sigma_0/c = pi*alpha/2.
inline constexpr double sigma0_tilde = pi * fine_structure / 2.0;

inline constexpr double ev_to_rad_s = electron_volt / hbar;  // 1 eV as angular frequency

}  // namespace cncas
