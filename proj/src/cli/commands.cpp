#include "cncas/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"

#include "cncas/analysis/analysis.hpp"
#include "cncas/film/array_conductivity.hpp"

namespace cncas {

using nlohmann::json;

namespace {

constexpr const char* kCsvHeader =
    "T_K,Delta_over_R,D_nm,phi_rad,E_J_per_m2,E_over_EM,torque_Nm_per_m2,"
    "torque_over_EM,mode,n_terms_used";

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string hash_hex(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<std::string> split_on_commas(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_double_field(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw std::runtime_error(where + ": bad number '" + s + "'");
  }
  return v;
}

// The films a sweep point evaluates: film pair with the tube spacing
// overridden, normalized once so dilute warnings print before any
// threads start.
struct FilmPair {
  FilmSpec a, b;
  double delta_over_R = 0.0;
};

std::vector<FilmPair> expand_delta_list(const RunConfig& rc) {
  std::vector<FilmPair> pairs;
  if (rc.delta_over_R.empty()) {
    pairs.push_back({rc.film_a, rc.film_b,
                     rc.film_a.delta_m / tube_radius(rc.film_a.ch)});
    return pairs;
  }
  for (double x : rc.delta_over_R) {
    FilmSpec fa = rc.film_a;
    FilmSpec fb = rc.film_b;
    fa.delta_m = x * tube_radius(fa.ch);
    fb.delta_m = x * tube_radius(fb.ch);
    pairs.push_back({normalize_film_spec(fa), normalize_film_spec(fb), x});
  }
  return pairs;
}

std::string point_context(const ResultRecord& r) {
  std::ostringstream os;
  os << "T_K=" << r.T_K << " Delta_over_R=" << r.delta_over_R
     << " D_nm=" << r.D_nm << " phi_rad=" << r.phi_rad << " mode="
     << mode_name(r.mode);
  return os.str();
}

}  // namespace

GridRunResult run_grid(const RunConfig& rc, bool want_torque) {
  const std::vector<FilmPair> pairs = expand_delta_list(rc);

  struct Task {
    double T;
    const FilmPair* films;
    double D_nm;
    double phi;
  };
  std::vector<Task> tasks;
  for (double T : rc.temperature_K) {
    for (const FilmPair& p : pairs) {
      for (double d : rc.distance_nm) {
        for (double phi : rc.phi_rad) {
          tasks.push_back({T, &p, d, phi});
        }
      }
    }
  }

  GridRunResult out;
  out.records.resize(tasks.size());
  std::vector<std::string> failures(tasks.size());

  const auto run_one = [&](std::size_t i) {
    const Task& t = tasks[i];
    ResultRecord& rec = out.records[i];
    rec.T_K = t.T;
    rec.delta_over_R = t.films->delta_over_R;
    rec.D_nm = t.D_nm;
    rec.phi_rad = t.phi;
    rec.mode = rc.mode;
    try {
      const FilmSheet sa(t.films->a, 0.0);
      const FilmSheet sb(t.films->b, t.phi);
      EvaluationOptions opt;
      opt.mode = rc.mode;
      opt.temperature_K = t.T;
      opt.want_torque = want_torque;
      opt.rel_tol = rc.rel_tol;
      opt.debug_checks = rc.debug_checks;
      const double D = t.D_nm * 1e-9;
      const LifshitzResult r = casimir_energy(sa, sb, D, opt);
      const double em = ideal_metal_energy(D);
      rec.energy = r.energy;
      rec.energy_over_em = r.energy / em;
      if (want_torque) {
        rec.torque = r.torque;
        rec.torque_over_em = r.torque / em;
      }
      rec.terms = r.terms_used;
      if (!r.converged) {
        failures[i] = point_context(rec) + ": integral tolerance not reached";
      }
    } catch (const std::exception& e) {
      rec.ok = false;
      failures[i] = point_context(rec) + ": " + e.what();
    }
  };

  const int workers =
      std::max(1, std::min<int>(rc.workers, static_cast<int>(tasks.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size();
             i = next.fetch_add(1)) {
          run_one(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  for (std::string& f : failures) {
    if (!f.empty()) out.failures.push_back(std::move(f));
  }
  return out;
}

std::string render_records_csv(const std::vector<ResultRecord>& records,
                               std::uint64_t hash) {
  std::string out = "# config_hash=" + hash_hex(hash) + "\n";
  out += kCsvHeader;
  out += '\n';
  for (const ResultRecord& r : records) {
    out += g17(r.T_K) + ',' + g17(r.delta_over_R) + ',' + g17(r.D_nm) + ',' +
           g17(r.phi_rad) + ',' + g17(r.energy) + ',' + g17(r.energy_over_em) +
           ',' + g17(r.torque) + ',' + g17(r.torque_over_em) + ',' +
           mode_name(r.mode) + ',' + std::to_string(r.terms) + '\n';
  }
  return out;
}

RecordFile load_records_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open records file: " + path);

  RecordFile out;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    if (line[0] == '#') {
      const std::string tag = "# config_hash=";
      if (line.rfind(tag, 0) == 0) out.hash_hex = line.substr(tag.size());
      continue;
    }
    if (!header_seen) {
      if (line != kCsvHeader) {
        throw std::runtime_error(where + ": unexpected CSV header");
      }
      header_seen = true;
      continue;
    }
    const std::vector<std::string> f = split_on_commas(line);
    if (f.size() != 10) {
      throw std::runtime_error(where + ": expected 10 columns, got " +
                               std::to_string(f.size()));
    }
    ResultRecord r;
    r.T_K = parse_double_field(f[0], where);
    r.delta_over_R = parse_double_field(f[1], where);
    r.D_nm = parse_double_field(f[2], where);
    r.phi_rad = parse_double_field(f[3], where);
    r.energy = parse_double_field(f[4], where);
    r.energy_over_em = parse_double_field(f[5], where);
    r.torque = parse_double_field(f[6], where);
    r.torque_over_em = parse_double_field(f[7], where);
    try {
      r.mode = mode_from_name(f[8]);
    } catch (const std::exception& e) {
      throw std::runtime_error(where + ": " + e.what());
    }
    r.terms = static_cast<int>(parse_double_field(f[9], where));
    r.ok = std::isfinite(r.energy);
    out.records.push_back(r);
  }
  if (!header_seen) throw std::runtime_error(path + ": no CSV header found");
  return out;
}

std::string render_conductivity_csv(const RunConfig& rc) {
  const FilmSpec& fs = rc.film_a;
  const double R = tube_radius(fs.ch);
  const double k_y = rc.k_y_times_R / R;
  const double T = rc.temperature_K.front();
  const double sigma0 = fine_structure * c_light / 4.0;

  std::vector<double> grid = rc.photon_energy_eV;
  if (grid.empty()) {
    grid = parse_grid("{\"min\":1e-3,\"max\":5.0,\"count\":200}", true);
  }

  std::string out = "# config_hash=" + hash_hex(rc.hash) + "\n";
  out +=
      "hbar_omega_eV,re_sigma_yy_over_sigma0,im_sigma_yy_over_sigma0,"
      "re_sigma_xx_over_sigma0,im_sigma_xx_over_sigma0,"
      "sigma_yy_imag_axis_over_sigma0,sigma_xx_imag_axis_over_sigma0\n";
  for (double e_eV : grid) {
    const double w = e_eV / hbar_eVs;  // rad/s on either axis
    const auto yy = sigma_yy_array_real_axis(real_point(k_y, w, T), fs);
    const auto xx = sigma_xx_array_real_axis(w, fs);
    const double yy_i = sigma_yy_array(imaginary_point(k_y, w, T), fs);
    const double xx_i = sigma_xx_array(w, fs);
    out += g17(e_eV) + ',' + g17(yy.real() / sigma0) + ',' +
           g17(yy.imag() / sigma0) + ',' + g17(xx.real() / sigma0) + ',' +
           g17(xx.imag() / sigma0) + ',' + g17(yy_i / sigma0) + ',' +
           g17(xx_i / sigma0) + '\n';
  }
  return out;
}

namespace {

std::string meta_sidecar(const RunConfig& rc, const char* verb,
                         std::size_t n_records, std::size_t n_failures) {
  json meta;
  meta["tool"] = "cncas";
  meta["version"] = tool_version;
  meta["command"] = verb;
  meta["config_hash"] = hash_hex(rc.hash);
  meta["config"] = json::parse(rc.canonical);
  meta["workers"] = rc.workers;
  meta["records"] = n_records;
  meta["failures"] = n_failures;
  return meta.dump(2) + "\n";
}

int run_and_write(const RunConfig& rc, bool want_torque, const char* verb,
                  std::ostream& log) {
  const GridRunResult run = run_grid(rc, want_torque);
  const std::string csv = render_records_csv(run.records, rc.hash);
  if (rc.out_path.empty()) {
    std::cout << csv;
  } else {
    write_text_file(rc.out_path, csv);
    write_text_file(rc.out_path + ".meta.json",
                    meta_sidecar(rc, verb, run.records.size(),
                                 run.failures.size()));
    log << verb << ": wrote " << run.records.size() << " records to "
        << rc.out_path << " (config_hash=" << hash_hex(rc.hash) << ")\n";
  }
  for (const std::string& f : run.failures) log << verb << ": FAILED " << f << "\n";
  return run.failures.empty() ? 0 : 3;
}

}  // namespace

int cmd_conductivity(const RunConfig& rc, std::ostream& log) {
  const std::string csv = render_conductivity_csv(rc);
  if (rc.out_path.empty()) {
    std::cout << csv;
  } else {
    write_text_file(rc.out_path, csv);
    write_text_file(rc.out_path + ".meta.json",
                    meta_sidecar(rc, "conductivity", 0, 0));
    log << "conductivity: wrote table to " << rc.out_path << "\n";
  }
  return 0;
}

int cmd_energy(const RunConfig& rc, std::ostream& log) {
  return run_and_write(rc, false, "energy", log);
}

int cmd_torque(const RunConfig& rc, std::ostream& log) {
  return run_and_write(rc, true, "torque", log);
}

int cmd_sweep(const RunConfig& rc, std::ostream& log) {
  return run_and_write(rc, true, "sweep", log);
}

namespace {

using GroupKey = std::tuple<int, double, double, double>;

std::string key_label(const char* fixed_names[3], const GroupKey& k) {
  std::ostringstream os;
  os << "mode=" << mode_name(static_cast<SpectralMode>(std::get<0>(k))) << " "
     << fixed_names[0] << "=" << std::get<1>(k) << " " << fixed_names[1] << "="
     << std::get<2>(k) << " " << fixed_names[2] << "=" << std::get<3>(k);
  return os.str();
}

// Groups records by mode plus three fixed columns; the selector pulls the
// two varying columns (x, y) out of each record.
template <typename KeyFn, typename XY>
std::map<GroupKey, std::vector<std::pair<double, double>>> group_records(
    const std::vector<ResultRecord>& records, KeyFn key_of, XY xy_of) {
  std::map<GroupKey, std::vector<std::pair<double, double>>> groups;
  for (const ResultRecord& r : records) {
    const auto xy = xy_of(r);
    if (!std::isfinite(xy.second)) continue;
    groups[key_of(r)].push_back(xy);
  }
  for (auto& [k, v] : groups) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return groups;
}

struct AnalyzeReport {
  std::ostringstream text;
  json machine = json::array();
  int usable_groups = 0;
  std::vector<std::string> problems;
};

void analyze_scaling(const std::vector<ResultRecord>& records,
                     AnalyzeReport& rep) {
  static const char* names[3] = {"T_K", "Delta_over_R", "phi_rad"};
  const auto groups = group_records(
      records,
      [](const ResultRecord& r) {
        return GroupKey{static_cast<int>(r.mode), r.T_K, r.delta_over_R,
                        r.phi_rad};
      },
      [](const ResultRecord& r) { return std::pair{r.D_nm, r.energy}; });
  for (const auto& [key, xy] : groups) {
    const std::string label = key_label(names, key);
    if (xy.size() < 3) {
      rep.problems.push_back("scaling: group " + label + " has " +
                             std::to_string(xy.size()) +
                             " distances, need >= 3 on axis D_nm");
      continue;
    }
    std::vector<double> D, E;
    for (const auto& [d, e] : xy) {
      D.push_back(d);
      E.push_back(e);
    }
    try {
      const ScalingResult sr = local_log_slope(D, E);
      rep.text << "[scaling] " << label << "\n";
      rep.text << "    D_nm        p\n";
      json jg;
      jg["group"] = label;
      jg["D_nm"] = sr.distance_m;
      jg["exponent"] = sr.exponent;
      for (std::size_t i = 0; i < sr.exponent.size(); ++i) {
        char row[64];
        std::snprintf(row, sizeof row, "    %-10.6g  %.6g\n",
                      sr.distance_m[i], sr.exponent[i]);
        rep.text << row;
      }
      if (sr.transition_m) {
        rep.text << "    p crosses 3.5 at D_nm = " << g17(*sr.transition_m)
                 << "\n";
        jg["transition_D_nm"] = *sr.transition_m;
      } else {
        rep.text << "    no p = 3.5 crossing inside the grid\n";
      }
      rep.machine.push_back(jg);
      ++rep.usable_groups;
    } catch (const std::exception& e) {
      rep.problems.push_back("scaling: group " + label + ": " + e.what());
    }
  }
}

void analyze_sinfit(const std::vector<ResultRecord>& records,
                    AnalyzeReport& rep) {
  static const char* names[3] = {"T_K", "Delta_over_R", "D_nm"};
  const auto groups = group_records(
      records,
      [](const ResultRecord& r) {
        return GroupKey{static_cast<int>(r.mode), r.T_K, r.delta_over_R,
                        r.D_nm};
      },
      [](const ResultRecord& r) { return std::pair{r.phi_rad, r.torque}; });
  for (const auto& [key, xy] : groups) {
    const std::string label = key_label(names, key);
    std::vector<double> phi, tq;
    for (const auto& [p, t] : xy) {
      phi.push_back(p);
      tq.push_back(t);
    }
    try {
      const SinFitResult fit = fit_sin2phi(phi, tq);
      rep.text << "[sinfit] " << label << "\n";
      rep.text << "    amplitude_Nm_per_m2 = " << g17(fit.amplitude) << "\n";
      rep.text << "    residual_fraction   = " << g17(fit.residual_fraction)
               << "\n";
      rep.machine.push_back({{"group", label},
                             {"amplitude_Nm_per_m2", fit.amplitude},
                             {"residual_fraction", fit.residual_fraction}});
      ++rep.usable_groups;
    } catch (const std::exception& e) {
      rep.problems.push_back("sinfit: group " + label + ": " + e.what() +
                             " (axis phi_rad)");
    }
  }
}

void analyze_crossover(const std::vector<ResultRecord>& records,
                       AnalyzeReport& rep) {
  static const char* names[3] = {"T_K", "Delta_over_R", "phi_rad"};
  std::vector<ResultRecord> quantum;
  for (const ResultRecord& r : records) {
    if (r.mode == SpectralMode::quantum && r.T_K > 0.0) quantum.push_back(r);
  }
  if (quantum.empty()) {
    rep.problems.push_back(
        "crossover: needs quantum-mode records at T_K > 0 (axis mode)");
    return;
  }
  const auto groups = group_records(
      quantum,
      [](const ResultRecord& r) {
        return GroupKey{static_cast<int>(r.mode), r.T_K, r.delta_over_R,
                        r.phi_rad};
      },
      [](const ResultRecord& r) { return std::pair{r.D_nm, r.energy}; });
  for (const auto& [key, xy] : groups) {
    const std::string label = key_label(names, key);
    if (xy.size() < 2) {
      rep.problems.push_back("crossover: group " + label + " has " +
                             std::to_string(xy.size()) +
                             " distances, need >= 2 on axis D_nm");
      continue;
    }
    const double T = std::get<1>(key);
    // Gap between the zero-point records and the thermal closed form.
    std::vector<double> gap;
    for (const auto& [d_nm, e] : xy) {
      gap.push_back(std::fabs(e) -
                    std::fabs(thermal_limit_energy(d_nm * 1e-9, T)));
    }
    std::optional<double> d_c;
    for (std::size_t i = 0; i + 1 < gap.size(); ++i) {
      if (gap[i] == 0.0) {
        d_c = xy[i].first;
        break;
      }
      if ((gap[i] > 0.0) != (gap[i + 1] > 0.0)) {
        const double la = std::log(xy[i].first), lb = std::log(xy[i + 1].first);
        const double t = gap[i] / (gap[i] - gap[i + 1]);
        d_c = std::exp(la + t * (lb - la));
        break;
      }
    }
    rep.text << "[crossover] " << label << "\n";
    json jg;
    jg["group"] = label;
    if (d_c) {
      rep.text << "    zero-point energy meets the thermal form at D_nm = "
               << g17(*d_c) << "\n";
      jg["crossover_D_nm"] = *d_c;
    } else {
      rep.text << "    no crossing inside the grid (gap stays "
               << (gap.front() > 0.0 ? "quantum" : "thermal") << "-dominated)\n";
      jg["crossover_D_nm"] = nullptr;
    }
    rep.machine.push_back(jg);
    ++rep.usable_groups;
  }
}

void analyze_flip(const std::vector<ResultRecord>& records,
                  AnalyzeReport& rep) {
  static const char* names[3] = {"T_K", "Delta_over_R", "phi_rad"};
  const auto groups = group_records(
      records,
      [](const ResultRecord& r) {
        return GroupKey{static_cast<int>(r.mode), r.T_K, r.delta_over_R,
                        r.phi_rad};
      },
      [](const ResultRecord& r) { return std::pair{r.D_nm, r.torque}; });
  for (const auto& [key, xy] : groups) {
    const std::string label = key_label(names, key);
    if (xy.size() < 2) {
      rep.problems.push_back("flip: group " + label + " has " +
                             std::to_string(xy.size()) +
                             " distances, need >= 2 on axis D_nm");
      continue;
    }
    std::optional<double> d_flip;
    for (std::size_t i = 0; i + 1 < xy.size(); ++i) {
      const double a = xy[i].second, b = xy[i + 1].second;
      if (a == 0.0) {
        d_flip = xy[i].first;
        break;
      }
      if ((a > 0.0) != (b > 0.0)) {
        const double t = a / (a - b);
        d_flip = xy[i].first + t * (xy[i + 1].first - xy[i].first);
        break;
      }
    }
    rep.text << "[flip] " << label << "\n";
    json jg;
    jg["group"] = label;
    if (d_flip) {
      rep.text << "    torque changes sign near D_nm = " << g17(*d_flip)
               << "\n";
      jg["flip_D_nm"] = *d_flip;
    } else {
      rep.text << "    torque keeps one sign across the grid\n";
      jg["flip_D_nm"] = nullptr;
    }
    rep.machine.push_back(jg);
    ++rep.usable_groups;
  }
}

}  // namespace

int cmd_analyze(const std::string& task,
                const std::vector<std::string>& record_paths, bool force,
                const std::string& out_path, std::ostream& log) {
  if (record_paths.empty()) {
    log << "analyze: no record files given\n";
    return 2;
  }
  std::vector<ResultRecord> records;
  std::string first_hash;
  for (const std::string& p : record_paths) {
    const RecordFile rf = load_records_csv(p);
    if (first_hash.empty()) {
      first_hash = rf.hash_hex;
    } else if (rf.hash_hex != first_hash && !force) {
      log << "analyze: config_hash mismatch between " << record_paths.front()
          << " (" << first_hash << ") and " << p << " (" << rf.hash_hex
          << "); pass --force to merge anyway\n";
      return 2;
    }
    records.insert(records.end(), rf.records.begin(), rf.records.end());
  }

  AnalyzeReport rep;
  rep.text << "task: " << task << "\n";
  rep.text << "records: " << records.size() << " from " << record_paths.size()
           << " file(s), config_hash=" << first_hash << "\n\n";
  if (task == "scaling") {
    analyze_scaling(records, rep);
  } else if (task == "sinfit") {
    analyze_sinfit(records, rep);
  } else if (task == "crossover") {
    analyze_crossover(records, rep);
  } else if (task == "flip") {
    analyze_flip(records, rep);
  } else {
    log << "analyze: unknown task '" << task
        << "' (expected scaling, crossover, flip, or sinfit)\n";
    return 2;
  }

  for (const std::string& p : rep.problems) rep.text << "note: " << p << "\n";

  if (out_path.empty()) {
    log << rep.text.str();
  } else {
    write_text_file(out_path, rep.text.str());
    json machine;
    machine["task"] = task;
    machine["config_hash"] = first_hash;
    machine["groups"] = rep.machine;
    machine["notes"] = rep.problems;
    write_text_file(out_path + ".json", machine.dump(2) + "\n");
    log << "analyze: wrote " << out_path << " and " << out_path << ".json\n";
  }

  if (rep.usable_groups == 0) {
    log << "analyze: no usable groups for task '" << task << "'\n";
    for (const std::string& p : rep.problems) log << "analyze: " << p << "\n";
    return 2;
  }
  return 0;
}

namespace {

struct CheckOutcome {
  explicit CheckOutcome(std::string n) : name(std::move(n)) {}
  std::string name;
  bool pass = false;
  std::string detail;
};

double rel_gap(double a, double b) {
  return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b));
}

}  // namespace

int cmd_validate(double rel_tol, std::ostream& log) {
  std::vector<CheckOutcome> checks;
  FilmSpec fs;
  fs.ch = {12, 0};
  fs = normalize_film_spec(fs);
  const FilmSheet a(fs, 0.0);
  const double film_tol = std::clamp(rel_tol, 1e-7, 1e-4);

  {
    CheckOutcome c{"thermal mode reproduces the closed form, torque-free"};
    EvaluationOptions opt;
    opt.mode = SpectralMode::thermal;
    opt.temperature_K = 300.0;
    opt.want_torque = true;
    const FilmSheet b(fs, 0.7);
    const LifshitzResult r = casimir_energy(a, b, 1e-7, opt);
    const double closed = thermal_limit_energy(1e-7, 300.0);
    c.pass = r.energy == closed && r.torque == 0.0;
    c.detail = "E=" + g17(r.energy) + " closed=" + g17(closed) +
               " torque=" + g17(r.torque);
    checks.push_back(c);
  }
  {
    CheckOutcome c{"strong isotropic sheets recover the ideal-metal energy"};
    const IsotropicSheet m(1e6);
    EvaluationOptions opt;
    opt.mode = SpectralMode::quantum;
    opt.temperature_K = 0.0;
    opt.rel_tol = 1e-5;
    const LifshitzResult r = casimir_energy(m, m, 1e-6, opt);
    const double gap = rel_gap(r.energy, ideal_metal_energy(1e-6));
    c.pass = gap < 1e-2;
    c.detail = "relative gap " + g17(gap);
    checks.push_back(c);
  }
  {
    CheckOutcome c{"film energy is negative and decays with distance"};
    EvaluationOptions opt;
    opt.mode = SpectralMode::quantum;
    opt.temperature_K = 0.0;
    opt.rel_tol = film_tol;
    const FilmSheet b(fs, 0.3);
    double prev = 0.0;
    c.pass = true;
    for (double d : {5e-8, 1e-7, 2e-7}) {
      const double e = casimir_energy(a, b, d, opt).energy;
      if (!(e < 0.0) || (prev != 0.0 && !(std::fabs(e) < std::fabs(prev)))) {
        c.pass = false;
      }
      c.detail += "E(" + g17(d) + ")=" + g17(e) + " ";
      prev = e;
    }
    checks.push_back(c);
  }
  {
    CheckOutcome c{"energy is even and pi-periodic in the axis angle"};
    EvaluationOptions opt;
    opt.mode = SpectralMode::quantum;
    opt.temperature_K = 0.0;
    opt.rel_tol = film_tol;
    const double e1 =
        casimir_energy(a, FilmSheet(fs, 0.4), 1e-7, opt).energy;
    const double e2 =
        casimir_energy(a, FilmSheet(fs, -0.4), 1e-7, opt).energy;
    const double e3 =
        casimir_energy(a, FilmSheet(fs, 0.4 + pi), 1e-7, opt).energy;
    c.pass = rel_gap(e1, e2) < 1e-9 && rel_gap(e1, e3) < 1e-9;
    c.detail = "E(phi)=" + g17(e1) + " E(-phi)=" + g17(e2) +
               " E(phi+pi)=" + g17(e3);
    checks.push_back(c);
  }
  {
    CheckOutcome c{"torque matches the negative angle derivative"};
    EvaluationOptions opt;
    opt.mode = SpectralMode::quantum;
    opt.temperature_K = 0.0;
    opt.rel_tol = std::min(film_tol, 1e-6);
    const double h = 0.05;
    const double ep =
        casimir_energy(a, FilmSheet(fs, 0.6 + h), 1e-7, opt).energy;
    const double em =
        casimir_energy(a, FilmSheet(fs, 0.6 - h), 1e-7, opt).energy;
    const double fd = -(ep - em) / (2.0 * h);
    opt.want_torque = true;
    const double tq = casimir_energy(a, FilmSheet(fs, 0.6), 1e-7, opt).torque;
    const double gap = rel_gap(fd, tq);
    c.pass = gap < 2e-2;
    c.detail = "torque=" + g17(tq) + " finite_difference=" + g17(fd) +
               " relative gap " + g17(gap);
    checks.push_back(c);
  }
  {
    CheckOutcome c{"hot spectral sum collapses onto the thermal form"};
    EvaluationOptions opt;
    opt.mode = SpectralMode::matsubara;
    opt.temperature_K = 3000.0;
    opt.rel_tol = film_tol;
    const FilmSheet b(fs, 0.5);
    const LifshitzResult r = casimir_energy(a, b, 1e-6, opt);
    const double gap = rel_gap(r.energy, thermal_limit_energy(1e-6, 3000.0));
    c.pass = gap < 1e-3;
    c.detail = "relative gap " + g17(gap) + " using " +
               std::to_string(r.terms_used) + " terms";
    checks.push_back(c);
  }

  bool all = true;
  for (const CheckOutcome& c : checks) {
    all = all && c.pass;
    log << (c.pass ? "[ ok ] " : "[FAIL] ") << c.name << "\n        "
        << c.detail << "\n";
  }
  log << (all ? "validate: all checks passed\n"
              : "validate: at least one check failed\n");
  return all ? 0 : 4;
}

}  // namespace cncas
