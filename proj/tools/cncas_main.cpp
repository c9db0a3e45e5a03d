#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cncas/cli/commands.hpp"

using namespace cncas;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string mode;
  int workers = 0;
  std::string out;
  double tolerance = 0.0;
  bool debug_checks = false;
};

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_path, "JSON config file")
      ->required();
  sub->add_option("--mode", args.mode,
                  "spectral mode: matsubara, quantum, or thermal");
  sub->add_option("--workers", args.workers,
                  "parallel workers over grid points");
  sub->add_option("--out", args.out, "output file (default: stdout)");
  sub->add_option("--tolerance", args.tolerance,
                  "relative tolerance per spectral term");
  sub->add_flag("--debug-checks", args.debug_checks,
                "enable internal cross-checks");
}

// Folds command-line overrides into the config document before the one
// canonical parse, so the embedded hash reflects what actually ran.
RunConfig config_from(const CommonArgs& args) {
  std::ifstream in(args.config_path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + args.config_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    parse_run_config(text);  // throws ConfigError with line and column
    throw ConfigError("config parse failed");
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  if (!args.mode.empty()) j["mode"] = args.mode;
  if (args.workers > 0) j["workers"] = args.workers;
  if (!args.out.empty()) j["out"] = args.out;
  if (args.tolerance > 0.0) j["rel_tol"] = args.tolerance;
  if (args.debug_checks) j["debug_checks"] = true;
  return parse_run_config(j.dump());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Casimir energy and torque between anisotropic nanotube-array films"};
  app.require_subcommand(1);

  CommonArgs cond_args, energy_args, torque_args, sweep_args;
  CLI::App* cond = app.add_subcommand(
      "conductivity", "film conductivity tables on both frequency axes");
  add_common(cond, cond_args);
  CLI::App* energy = app.add_subcommand(
      "energy", "interaction energy per unit area over the configured grid");
  add_common(energy, energy_args);
  CLI::App* torque = app.add_subcommand(
      "torque", "energy and torque over the configured grid");
  add_common(torque, torque_args);
  CLI::App* sweep = app.add_subcommand(
      "sweep", "full energy and torque sweep for figure data");
  add_common(sweep, sweep_args);

  std::string task, analyze_out;
  std::vector<std::string> record_paths;
  bool force = false;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "derived quantities from result records");
  analyze->add_option("--task", task, "scaling, crossover, flip, or sinfit")
      ->required();
  analyze->add_option("records", record_paths, "result CSV files")
      ->required();
  analyze->add_option("--out", analyze_out, "report file (plus .json sidecar)");
  analyze->add_flag("--force", force,
                    "merge records with mismatched config hashes");

  double validate_tol = 1e-5;
  CLI::App* validate =
      app.add_subcommand("validate", "run the physics invariant suite");
  validate->add_option("--tolerance", validate_tol,
                       "relative tolerance for the checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cond->parsed()) return cmd_conductivity(config_from(cond_args), std::cerr);
    if (energy->parsed()) return cmd_energy(config_from(energy_args), std::cerr);
    if (torque->parsed()) return cmd_torque(config_from(torque_args), std::cerr);
    if (sweep->parsed()) return cmd_sweep(config_from(sweep_args), std::cerr);
    if (analyze->parsed()) {
      return cmd_analyze(task, record_paths, force, analyze_out, std::cerr);
    }
    if (validate->parsed()) return cmd_validate(validate_tol, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
