#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "cncas/cli/run_config.hpp"

namespace cncas {

inline constexpr const char* tool_version = "0.1.0";

// One grid point of an energy/torque run, flattened for CSV export.
// energy_over_em and torque_over_em are normalized by the ideal-metal
// energy at the same distance.
struct ResultRecord {
  double T_K = 0.0;
  double delta_over_R = 0.0;
  double D_nm = 0.0;
  double phi_rad = 0.0;
  double energy = std::numeric_limits<double>::quiet_NaN();
  double energy_over_em = std::numeric_limits<double>::quiet_NaN();
  double torque = std::numeric_limits<double>::quiet_NaN();
  double torque_over_em = std::numeric_limits<double>::quiet_NaN();
  SpectralMode mode = SpectralMode::matsubara;
  int terms = 0;
  bool ok = true;
};

struct GridRunResult {
  std::vector<ResultRecord> records;   // grid order: (T, Delta, D, phi)
  std::vector<std::string> failures;   // one context line per failed point
};

// Evaluates every (T, Delta, D, phi) grid point.  The map is parallel over
// points with a shared atomic cursor; records land in preassigned slots,
// so the output is byte-for-byte independent of the worker count.
GridRunResult run_grid(const RunConfig& rc, bool want_torque);

// CSV with a "# config_hash=<16 hex>" first line, then the header
// T_K,Delta_over_R,D_nm,phi_rad,E_J_per_m2,E_over_EM,torque_Nm_per_m2,
// torque_over_EM,mode,n_terms_used.  Doubles are %.17g.
std::string render_records_csv(const std::vector<ResultRecord>& records,
                               std::uint64_t hash);

struct RecordFile {
  std::string hash_hex;
  std::vector<ResultRecord> records;
};
RecordFile load_records_csv(const std::string& path);

// Spectra table of the film's sheet conductivities scaled by
// sigma_0 = alpha c / 4, one row per photon energy, both frequency axes.
std::string render_conductivity_csv(const RunConfig& rc);

// Verbs.  Each returns the process exit code: 0 success, 2 config or
// coverage error, 3 numeric failure at one or more grid points, 4
// validation failure.  log receives progress and diagnostics.
int cmd_conductivity(const RunConfig& rc, std::ostream& log);
int cmd_energy(const RunConfig& rc, std::ostream& log);
int cmd_torque(const RunConfig& rc, std::ostream& log);
int cmd_sweep(const RunConfig& rc, std::ostream& log);
int cmd_analyze(const std::string& task,
                const std::vector<std::string>& record_paths, bool force,
                const std::string& out_path, std::ostream& log);
int cmd_validate(double rel_tol, std::ostream& log);

}  // namespace cncas
