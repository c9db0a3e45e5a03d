#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cncas/film/film_spec.hpp"
#include "cncas/lifshitz/evaluator.hpp"

namespace cncas {

// Configuration problem with the offending field in the message.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A fully resolved run: grids expanded, film specs normalized.  Key names
// in the JSON document carry unit suffixes (T_K, D_nm, phi_rad,
// Delta_over_R, hbar_omega_eV); see the README for the schema.
struct RunConfig {
  FilmSpec film_a;
  FilmSpec film_b;
  bool film_b_given = false;      // otherwise film_b mirrors film_a
  SpectralMode mode = SpectralMode::matsubara;
  std::vector<double> temperature_K = {300.0};
  std::vector<double> delta_over_R;   // empty: keep the films' own spacing
  std::vector<double> distance_nm = {100.0};
  std::vector<double> phi_rad = {0.0};
  std::string out_path;
  int workers = 1;
  double rel_tol = 1e-6;
  bool debug_checks = false;

  // Spectra table controls (conductivity verb).
  double k_y_times_R = 1.0;
  std::vector<double> photon_energy_eV;

  // Canonical serialization of everything above; its FNV-1a hash labels
  // every output produced from this config.
  std::string canonical;
  std::uint64_t hash = 0;
};

// 64-bit FNV-1a.
std::uint64_t fnv1a_hash(const std::string& bytes);

// Parses and validates a JSON config document.  Unknown keys, malformed
// grids, or out-of-range values raise ConfigError naming the field.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

// Resolved grid helper shared by the parser and the tests: an explicit
// array, a scalar, or {min, max, count [, spacing: "log"|"linear"]}.
std::vector<double> parse_grid(const std::string& json_fragment,
                               bool log_default_spacing);

const char* mode_name(SpectralMode mode);
SpectralMode mode_from_name(const std::string& name);

}  // namespace cncas
