#include "cncas/cli/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cncas {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

void reject_unknown_keys(const json& j, const std::string& section,
                         const std::set<std::string>& allowed) {
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError("unknown config key '" + item.key() + "' in '" +
                        section + "'");
    }
  }
}

double number_at(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

double positive_at(const json& j, const std::string& field) {
  const double v = number_at(j, field);
  if (!(v > 0.0)) fail(field, "must be positive");
  return v;
}

// Scalar, explicit array, or {min, max, count [, spacing]}.
std::vector<double> grid_at(const json& j, const std::string& field,
                            bool log_default) {
  if (j.is_number()) return {j.get<double>()};
  if (j.is_array()) {
    if (j.empty()) fail(field, "grid must be non-empty");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(number_at(v, field));
    return out;
  }
  if (!j.is_object()) fail(field, "expected number, array, or {min,max,count}");
  reject_unknown_keys(j, field, {"min", "max", "count", "spacing"});
  if (!j.contains("min") || !j.contains("max") || !j.contains("count")) {
    fail(field, "grid object needs min, max, count");
  }
  const double lo = number_at(j.at("min"), field + ".min");
  const double hi = number_at(j.at("max"), field + ".max");
  if (!j.at("count").is_number_integer()) fail(field + ".count", "expected an integer");
  const long long n = j.at("count").get<long long>();
  if (n < 1 || n > 100000) fail(field + ".count", "must be in [1, 100000]");
  if (!(hi >= lo)) fail(field, "max must be >= min");

  bool log_spacing = log_default;
  if (j.contains("spacing")) {
    const std::string s = j.at("spacing").is_string()
                              ? j.at("spacing").get<std::string>()
                              : std::string();
    if (s == "log") {
      log_spacing = true;
    } else if (s == "linear") {
      log_spacing = false;
    } else {
      fail(field + ".spacing", "expected \"log\" or \"linear\"");
    }
  }
  if (log_spacing && !(lo > 0.0)) fail(field, "log spacing needs min > 0");

  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (long long i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    out[static_cast<std::size_t>(i)] =
        log_spacing ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                    : lo + t * (hi - lo);
  }
  out.back() = hi;  // exact endpoint either way
  return out;
}

FilmSpec film_at(const json& j, const std::string& section) {
  reject_unknown_keys(j, section,
                      {"chirality", "delta_over_R", "d_over_R", "eps_b",
                       "eps_s", "mu_eV", "tau_fs", "v_fermi_over_c",
                       "m_star_me", "n2d_per_m2", "gamma0_eV", "interband"});
  FilmSpec fs;
  if (j.contains("chirality")) {
    const json& c = j.at("chirality");
    if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() ||
        !c[1].is_number_integer()) {
      fail(section + ".chirality", "expected [n, m] integers");
    }
    fs.ch = {c[0].get<int>(), c[1].get<int>()};
  }
  const double R = tube_radius(fs.ch);
  if (j.contains("delta_over_R")) {
    const double ratio = positive_at(j.at("delta_over_R"), section + ".delta_over_R");
    if (!(ratio > 2.0)) fail(section + ".delta_over_R", "spacing must exceed 2 R");
    fs.delta_m = ratio * R;
  }
  if (j.contains("d_over_R")) {
    fs.d_m = positive_at(j.at("d_over_R"), section + ".d_over_R") * R;
  }
  if (j.contains("eps_b")) fs.eps_b = positive_at(j.at("eps_b"), section + ".eps_b");
  if (j.contains("eps_s")) fs.eps_s = positive_at(j.at("eps_s"), section + ".eps_s");
  if (j.contains("mu_eV")) fs.ep.mu_eV = positive_at(j.at("mu_eV"), section + ".mu_eV");
  if (j.contains("tau_fs")) {
    fs.ep.tau_s = positive_at(j.at("tau_fs"), section + ".tau_fs") * 1e-15;
  }
  if (j.contains("v_fermi_over_c")) {
    fs.ep.v_fermi =
        positive_at(j.at("v_fermi_over_c"), section + ".v_fermi_over_c") *
        c_light;
  }
  if (j.contains("m_star_me")) {
    fs.ep.m_star_me = positive_at(j.at("m_star_me"), section + ".m_star_me");
  }
  if (j.contains("n2d_per_m2")) {
    fs.ep.n2d_m2 = positive_at(j.at("n2d_per_m2"), section + ".n2d_per_m2");
  }
  if (j.contains("gamma0_eV")) {
    fs.ep.gamma0_eV = positive_at(j.at("gamma0_eV"), section + ".gamma0_eV");
  }
  if (j.contains("interband")) {
    const json& ib = j.at("interband");
    reject_unknown_keys(ib, section + ".interband",
                        {"variant", "broadening_eV", "oscillators",
                         "table_path"});
    if (ib.contains("variant")) {
      const std::string v = ib.at("variant").is_string()
                                ? ib.at("variant").get<std::string>()
                                : std::string();
      if (v == "tight_binding_kubo") {
        fs.inter.variant = InterbandVariant::tight_binding_kubo;
      } else if (v == "lorentz_oscillators") {
        fs.inter.variant = InterbandVariant::lorentz_oscillators;
      } else if (v == "tabulated") {
        fs.inter.variant = InterbandVariant::tabulated;
      } else {
        fail(section + ".interband.variant", "unknown variant");
      }
    }
    if (ib.contains("broadening_eV")) {
      fs.inter.broadening_eV =
          positive_at(ib.at("broadening_eV"), section + ".interband.broadening_eV");
    }
    if (ib.contains("oscillators")) {
      const json& os = ib.at("oscillators");
      if (!os.is_array()) fail(section + ".interband.oscillators", "expected an array");
      for (const auto& o : os) {
        reject_unknown_keys(o, section + ".interband.oscillators",
                            {"center_eV", "strength", "width_eV"});
        LorentzOscillator L;
        if (o.contains("center_eV")) L.center_eV = positive_at(o.at("center_eV"), "center_eV");
        if (o.contains("strength")) L.strength = positive_at(o.at("strength"), "strength");
        if (o.contains("width_eV")) L.width_eV = positive_at(o.at("width_eV"), "width_eV");
        fs.inter.oscillators.push_back(L);
      }
    }
    if (ib.contains("table_path")) {
      if (!ib.at("table_path").is_string()) {
        fail(section + ".interband.table_path", "expected a string");
      }
      fs.inter.table_path = ib.at("table_path").get<std::string>();
    }
  }
  try {
    return normalize_film_spec(fs);
  } catch (const std::exception& e) {
    throw ConfigError("config section '" + section + "': " + e.what());
  }
}

json film_canonical(const FilmSpec& fs) {
  json j;
  j["chirality"] = {fs.ch.n, fs.ch.m};
  j["delta_m"] = fs.delta_m;
  j["d_m"] = fs.d_m;
  j["eps_b"] = fs.eps_b;
  j["eps_s"] = fs.eps_s;
  j["tau_s"] = fs.ep.tau_s;
  j["v_fermi"] = fs.ep.v_fermi;
  j["mu_eV"] = fs.ep.mu_eV;
  j["m_star_me"] = fs.ep.m_star_me;
  j["n2d_m2"] = fs.ep.n2d_m2;
  j["gamma0_eV"] = fs.ep.gamma0_eV;
  json ib;
  switch (fs.inter.variant) {
    case InterbandVariant::tight_binding_kubo: ib["variant"] = "tight_binding_kubo"; break;
    case InterbandVariant::lorentz_oscillators: ib["variant"] = "lorentz_oscillators"; break;
    case InterbandVariant::tabulated: ib["variant"] = "tabulated"; break;
  }
  ib["broadening_eV"] = fs.inter.broadening_eV;
  if (!fs.inter.oscillators.empty()) {
    json os = json::array();
    for (const auto& o : fs.inter.oscillators) {
      os.push_back({{"center_eV", o.center_eV},
                    {"strength", o.strength},
                    {"width_eV", o.width_eV}});
    }
    ib["oscillators"] = os;
  }
  if (!fs.inter.table_path.empty()) ib["table_path"] = fs.inter.table_path;
  j["interband"] = ib;
  return j;
}

std::pair<int, int> line_of_byte(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

std::uint64_t fnv1a_hash(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

const char* mode_name(SpectralMode mode) {
  switch (mode) {
    case SpectralMode::matsubara: return "matsubara";
    case SpectralMode::quantum: return "quantum";
    case SpectralMode::thermal: return "thermal";
  }
  return "matsubara";
}

SpectralMode mode_from_name(const std::string& name) {
  if (name == "matsubara") return SpectralMode::matsubara;
  if (name == "quantum") return SpectralMode::quantum;
  if (name == "thermal") return SpectralMode::thermal;
  throw ConfigError("unknown mode '" + name +
                    "' (expected matsubara, quantum, or thermal)");
}

std::vector<double> parse_grid(const std::string& json_fragment,
                               bool log_default_spacing) {
  json j;
  try {
    j = json::parse(json_fragment);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("grid parse: ") + e.what());
  }
  return grid_at(j, "grid", log_default_spacing);
}

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_of_byte(json_text, e.byte);
    std::ostringstream msg;
    msg << "config parse error at line " << line << ", column " << col << ": "
        << e.what();
    throw ConfigError(msg.str());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown_keys(j, "config root",
                      {"film", "film_b", "mode", "T_K", "Delta_over_R", "D_nm",
                       "phi_rad", "workers", "rel_tol", "debug_checks", "out",
                       "spectra"});

  RunConfig rc;
  rc.film_a = film_at(j.contains("film") ? j.at("film") : json::object(), "film");
  if (j.contains("film_b")) {
    rc.film_b = film_at(j.at("film_b"), "film_b");
    rc.film_b_given = true;
  } else {
    rc.film_b = rc.film_a;
  }

  if (j.contains("mode")) {
    if (!j.at("mode").is_string()) fail("mode", "expected a string");
    rc.mode = mode_from_name(j.at("mode").get<std::string>());
  }
  if (j.contains("T_K")) rc.temperature_K = grid_at(j.at("T_K"), "T_K", false);
  for (double T : rc.temperature_K) {
    if (!(T >= 0.0)) fail("T_K", "temperatures must be >= 0");
    if (T == 0.0 && rc.mode != SpectralMode::quantum) {
      fail("T_K", "zero temperature needs mode \"quantum\"");
    }
  }
  if (j.contains("Delta_over_R")) {
    rc.delta_over_R = grid_at(j.at("Delta_over_R"), "Delta_over_R", false);
    for (double x : rc.delta_over_R) {
      if (!(x > 2.0)) fail("Delta_over_R", "spacing must exceed 2 R");
    }
  }
  if (j.contains("D_nm")) rc.distance_nm = grid_at(j.at("D_nm"), "D_nm", true);
  for (double d : rc.distance_nm) {
    if (!(d > 0.0)) fail("D_nm", "distances must be positive");
  }
  if (j.contains("phi_rad")) rc.phi_rad = grid_at(j.at("phi_rad"), "phi_rad", false);
  if (j.contains("workers")) {
    if (!j.at("workers").is_number_integer()) fail("workers", "expected an integer");
    const long long w = j.at("workers").get<long long>();
    if (w < 1 || w > 256) fail("workers", "must be in [1, 256]");
    rc.workers = static_cast<int>(w);
  }
  if (j.contains("rel_tol")) {
    rc.rel_tol = positive_at(j.at("rel_tol"), "rel_tol");
    if (rc.rel_tol > 0.1) fail("rel_tol", "must be <= 0.1");
  }
  if (j.contains("debug_checks")) {
    if (!j.at("debug_checks").is_boolean()) fail("debug_checks", "expected a boolean");
    rc.debug_checks = j.at("debug_checks").get<bool>();
  }
  if (j.contains("out")) {
    if (!j.at("out").is_string()) fail("out", "expected a string");
    rc.out_path = j.at("out").get<std::string>();
  }
  if (j.contains("spectra")) {
    const json& sp = j.at("spectra");
    reject_unknown_keys(sp, "spectra", {"k_y_times_R", "hbar_omega_eV"});
    if (sp.contains("k_y_times_R")) {
      rc.k_y_times_R = number_at(sp.at("k_y_times_R"), "spectra.k_y_times_R");
      if (rc.k_y_times_R < 0.0) fail("spectra.k_y_times_R", "must be >= 0");
    }
    if (sp.contains("hbar_omega_eV")) {
      rc.photon_energy_eV =
          grid_at(sp.at("hbar_omega_eV"), "spectra.hbar_omega_eV", true);
      for (double e : rc.photon_energy_eV) {
        if (!(e > 0.0)) fail("spectra.hbar_omega_eV", "energies must be positive");
      }
    }
  }

  // Records are totally ordered by (T, Delta, D, phi); sorting the grids
  // here makes that ordering a property of the config, not the driver.
  const auto sort_unique = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  sort_unique(rc.temperature_K);
  sort_unique(rc.delta_over_R);
  sort_unique(rc.distance_nm);
  sort_unique(rc.phi_rad);
  sort_unique(rc.photon_energy_eV);

  // Hash only what changes the numbers: physics inputs and grids, not
  // worker count or output paths.
  json canon;
  canon["film"] = film_canonical(rc.film_a);
  canon["film_b"] = film_canonical(rc.film_b);
  canon["mode"] = mode_name(rc.mode);
  canon["T_K"] = rc.temperature_K;
  if (!rc.delta_over_R.empty()) canon["Delta_over_R"] = rc.delta_over_R;
  canon["D_nm"] = rc.distance_nm;
  canon["phi_rad"] = rc.phi_rad;
  canon["rel_tol"] = rc.rel_tol;
  if (!rc.photon_energy_eV.empty() || rc.k_y_times_R != 1.0) {
    canon["spectra"] = {{"k_y_times_R", rc.k_y_times_R},
                        {"hbar_omega_eV", rc.photon_energy_eV}};
  }
  rc.canonical = canon.dump();
  rc.hash = fnv1a_hash(rc.canonical);
  return rc;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

}  // namespace cncas
