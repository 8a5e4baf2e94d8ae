// Copyright 2026 The kerrsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kerrsim/kerrsim.hpp"

namespace {

namespace ks = kerrsim;
using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
  if (x == 0.0) x = std::abs(x);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::string(buf);
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  return v.get<double>();
}

long long as_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return v.get<long long>();
}

bool as_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) throw ConfigError(where + ": expected true or false");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError(where + ": expected a string");
  return v.get<std::string>();
}

ks::cplx as_complex(const json& v, const std::string& where) {
  if (v.is_number()) return ks::cplx(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return ks::cplx(v[0].get<double>(), v[1].get<double>());
  }
  throw ConfigError(where + ": expected a number or an [re, im] pair");
}

/// Strict accessor for one JSON object: every key must be consumed by a
/// getter before finish(), otherwise the leftover key is reported with its
/// JSON-pointer path.
class ObjectView {
 public:
  ObjectView(const json& node, std::string pointer)
      : node_(&node), pointer_(std::move(pointer)) {
    if (!node_->is_object()) {
      throw ConfigError((pointer_.empty() ? std::string("config root")
                                          : pointer_) +
                        ": expected an object");
    }
  }

  std::string path(const std::string& key) const { return pointer_ + "/" + key; }

  bool has(const std::string& key) const { return node_->contains(key); }

  const json* find(const std::string& key) {
    used_.insert(key);
    auto it = node_->find(key);
    return it == node_->end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* p = find(key);
    if (!p) throw ConfigError(path(key) + ": missing required key");
    return *p;
  }

  double require_number(const std::string& key) {
    return as_number(require(key), path(key));
  }
  double number(const std::string& key, double fallback) {
    const json* p = find(key);
    return p ? as_number(*p, path(key)) : fallback;
  }
  long long require_integer(const std::string& key) {
    return as_integer(require(key), path(key));
  }
  long long integer(const std::string& key, long long fallback) {
    const json* p = find(key);
    return p ? as_integer(*p, path(key)) : fallback;
  }
  bool boolean(const std::string& key, bool fallback) {
    const json* p = find(key);
    return p ? as_bool(*p, path(key)) : fallback;
  }
  std::string require_text(const std::string& key) {
    return as_string(require(key), path(key));
  }
  std::string text(const std::string& key, const std::string& fallback) {
    const json* p = find(key);
    return p ? as_string(*p, path(key)) : fallback;
  }
  ks::cplx require_complex(const std::string& key) {
    return as_complex(require(key), path(key));
  }
  ks::cplx complex_value(const std::string& key, ks::cplx fallback) {
    const json* p = find(key);
    return p ? as_complex(*p, path(key)) : fallback;
  }

  ObjectView child(const std::string& key) {
    return ObjectView(require(key), path(key));
  }
  std::optional<ObjectView> maybe_child(const std::string& key) {
    const json* p = find(key);
    if (!p) return std::nullopt;
    return ObjectView(*p, path(key));
  }

  void finish() const {
    for (const auto& item : node_->items()) {
      if (!used_.count(item.key())) {
        throw ConfigError(path(item.key()) + ": unknown key");
      }
    }
  }

 private:
  const json* node_;
  std::string pointer_;
  std::set<std::string> used_;
};

/// Deduplicating warning sink: the CSV metadata records the total number of
/// warning events while stderr carries one line per distinct warning.
class WarningLog {
 public:
  void add(const ks::ValidityWarning& w) {
    ++total_;
    for (Entry& e : entries_) {
      if (e.code == w.code && e.message == w.message) {
        ++e.count;
        if (std::abs(w.value) > std::abs(e.value)) e.value = w.value;
        return;
      }
    }
    entries_.push_back({w.code, w.message, w.value, 1});
  }

  void add(const std::vector<ks::ValidityWarning>& ws) {
    for (const auto& w : ws) add(w);
  }

  int total() const { return total_; }

  void print(std::ostream& err) const {
    for (const Entry& e : entries_) {
      err << "warning: " << e.code << ": " << e.message
          << " (value=" << fmt(e.value) << ", occurrences=" << e.count
          << ")\n";
    }
  }

 private:
  struct Entry {
    std::string code;
    std::string message;
    double value;
    int count;
  };
  std::vector<Entry> entries_;
  int total_ = 0;
};

/// Buffered CSV assembly: `#`-prefixed metadata block, then a header row,
/// then data rows.
class CsvDocument {
 public:
  void meta(const std::string& key, const std::string& value) {
    meta_.emplace_back(key, value);
  }
  void columns(std::vector<std::string> names) { columns_ = std::move(names); }
  void row(const std::vector<std::string>& fields) {
    if (fields.size() != columns_.size()) {
      throw std::logic_error("CSV row width does not match the header");
    }
    rows_.push_back(join(fields));
  }

  std::string str() const {
    std::string out;
    for (const auto& [k, v] : meta_) {
      out += "# " + k + ": " + v + "\n";
    }
    out += join(columns_) + "\n";
    for (const std::string& r : rows_) out += r + "\n";
    return out;
  }

 private:
  static std::string join(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) line += ",";
      line += fields[i];
    }
    return line;
  }

  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::string> columns_;
  std::vector<std::string> rows_;
};

struct RunContext {
  json config;
  int threads = 1;
  unsigned long long seed = 0;
  WarningLog warnings;
  CsvDocument csv;
};

std::vector<double> make_grid(double lo, double hi, long long points,
                              bool log_scale, const std::string& where) {
  if (points < 2) throw ConfigError(where + "/points: must be >= 2");
  if (!(lo < hi)) throw ConfigError(where + "/min: must be below max");
  if (log_scale && !(lo > 0.0)) {
    throw ConfigError(where + "/min: log scale requires min > 0");
  }
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (long long i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    grid[static_cast<std::size_t>(i)] =
        log_scale ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

// ---------------------------------------------------------------------------
// dark-state: amplitudes and eigenvalue of the (perturbed) dark state next to
// the dense-eigensolver value.

void run_dark_state(RunContext& ctx) {
  ObjectView root(ctx.config, "");
  const std::string scheme_name = root.text("scheme", "m");
  const double gamma1 = root.number("gamma1", 1.0);
  const double gamma2 = root.number("gamma2", 1.0);
  const double gamma0 = root.number("gamma0", 0.0);
  const double delta = root.number("delta", 0.0);
  ObjectView field_view = root.child("fields");

  ks::LevelScheme scheme;
  ks::LevelScheme detuned;
  std::vector<ks::FieldMode> fields;
  ks::DarkStateResult state;
  double eigen_formula = 0.0;

  if (scheme_name == "m") {
    const ks::cplx a1 = field_view.require_complex("alpha1");
    const ks::cplx a2 = field_view.require_complex("alpha2");
    const ks::cplx o1 = field_view.require_complex("omega1");
    const ks::cplx o2 = field_view.require_complex("omega2");
    field_view.finish();
    root.finish();
    scheme = ks::make_m_scheme(gamma1, gamma2, gamma0, 0.0);
    detuned = ks::make_m_scheme(gamma1, gamma2, gamma0, delta);
    fields = {{"alpha1", a1, ks::FieldRole::probe},
              {"Omega1", o1, ks::FieldRole::drive},
              {"alpha2", a2, ks::FieldRole::probe},
              {"Omega2", o2, ks::FieldRole::drive}};
    state = ks::perturbed_dark_state(scheme, fields, delta);
    eigen_formula = state.eigenvalue;
  } else if (scheme_name == "lambda") {
    if (delta != 0.0) {
      throw ConfigError(
          "/delta: only the five-level scheme supports a finite two-photon "
          "detuning");
    }
    const ks::cplx a1 = field_view.require_complex("alpha1");
    const ks::cplx o1 = field_view.require_complex("omega1");
    field_view.finish();
    root.finish();
    scheme = ks::make_lambda_scheme(gamma1, gamma0);
    detuned = scheme;
    fields = {{"alpha1", a1, ks::FieldRole::probe},
              {"Omega1", o1, ks::FieldRole::drive}};
    state = ks::dark_state(scheme, fields);
    eigen_formula = 0.0;
  } else {
    throw ConfigError("/scheme: expected \"m\" or \"lambda\"");
  }

  ctx.warnings.add(state.warnings);
  const ks::DenseDarkState dense = ks::eigen_dark_state(detuned, fields);

  ctx.csv.meta("scheme", scheme_name);
  ctx.csv.meta("exact", state.is_exact ? "true" : "false");
  ctx.csv.columns({"quantity", "value_re", "value_im"});
  for (int i = 0; i < scheme.size(); ++i) {
    const ks::cplx amp = state.amplitudes(i);
    ctx.csv.row({"amplitude_" + scheme.levels[static_cast<std::size_t>(i)].label,
                 fmt(amp.real()), fmt(amp.imag())});
  }
  ctx.csv.row({"multiplicity", fmt(state.multiplicity), fmt(0.0)});
  ctx.csv.row({"zeta", fmt(state.zeta), fmt(0.0)});
  ctx.csv.row({"eigenvalue_formula", fmt(eigen_formula), fmt(0.0)});
  ctx.csv.row({"eigenvalue_dense", fmt(dense.eigenvalue), fmt(0.0)});
  ctx.csv.row({"eigenvalue_error",
               fmt(std::abs(dense.eigenvalue - eigen_formula)), fmt(0.0)});
}

// ---------------------------------------------------------------------------
// susceptibility: sweep of the five-level-chain and four-level-chain
// susceptibilities with transparency-window and interchange diagnostics.

void run_susceptibility(RunContext& ctx) {
  ObjectView root(ctx.config, "");
  const std::string kind = root.text("kind", "both");
  if (kind != "m" && kind != "n" && kind != "both") {
    throw ConfigError("/kind: expected \"m\", \"n\", or \"both\"");
  }
  const bool want_m = kind != "n";
  const bool want_n = kind != "m";

  ObjectView medium = root.child("medium");
  ks::MediumParams mp;
  mp.density = medium.number("density", 1.0);
  mp.wavelength = medium.number("wavelength", 1.0);
  mp.doppler_width = medium.require_number("doppler_width");
  mp.gamma1 = medium.number("gamma1", 1.0);
  mp.gamma2 = medium.number("gamma2", 1.0);
  mp.ground_relaxation = medium.number("ground_relaxation", 0.0);
  medium.finish();
  mp.validate();

  ObjectView field_view = root.child("fields");
  const ks::cplx alpha1 = field_view.require_complex("alpha1");
  const ks::cplx omega1 = field_view.require_complex("omega1");
  ks::cplx omega2{0.0, 0.0};
  const bool interchange = root.boolean("interchange", false);
  if (want_m || interchange) {
    omega2 = field_view.require_complex("omega2");
  } else {
    omega2 = field_view.complex_value("omega2", ks::cplx(0.0, 0.0));
  }
  field_view.finish();

  const double delta0 = root.number("delta", 0.0);
  const double big_delta0 = root.number("big_delta", 0.0);

  ObjectView sweep = root.child("sweep");
  const std::string variable = sweep.require_text("variable");
  if (variable != "delta" && variable != "big_delta" && variable != "omega2") {
    throw ConfigError(
        "/sweep/variable: expected \"delta\", \"big_delta\", or \"omega2\"");
  }
  const double lo = sweep.require_number("min");
  const double hi = sweep.require_number("max");
  const long long points = sweep.require_integer("points");
  const std::string scale = sweep.text("scale", "linear");
  if (scale != "linear" && scale != "log") {
    throw ConfigError("/sweep/scale: expected \"linear\" or \"log\"");
  }
  sweep.finish();
  root.finish();

  const std::vector<double> grid =
      make_grid(lo, hi, points, scale == "log", "/sweep");

  std::vector<std::string> cols = {variable};
  if (want_m) {
    cols.push_back("chi_m_re");
    cols.push_back("chi_m_im");
  }
  if (want_n) {
    cols.push_back("chi_n_re");
    cols.push_back("chi_n_im");
  }
  cols.push_back("eit_margin");
  cols.push_back("eit_satisfied");
  if (interchange) {
    cols.push_back("mapped_big_delta");
    cols.push_back("interchange_magnitude_ratio");
    cols.push_back("interchange_phase_difference");
  }

  ctx.csv.meta("kind", kind);
  ctx.csv.meta("sweep", variable + " " + fmt(lo) + ".." + fmt(hi) + " " +
                            fmt(static_cast<double>(points)) + " " + scale);
  ctx.csv.columns(cols);

  for (double x : grid) {
    const double delta = variable == "delta" ? x : delta0;
    const double big_delta = variable == "big_delta" ? x : big_delta0;
    const ks::cplx om2 = variable == "omega2" ? ks::cplx(x, 0.0) : omega2;

    std::vector<std::string> row = {fmt(x)};
    if (want_m) {
      const ks::Susceptibility chi =
          ks::chi_m(mp, alpha1, omega1, om2, delta);
      ctx.warnings.add(chi.warnings);
      row.push_back(fmt(chi.value.real()));
      row.push_back(fmt(chi.value.imag()));
    }
    if (want_n) {
      const ks::Susceptibility chi = ks::chi_n(mp, alpha1, omega1, big_delta);
      ctx.warnings.add(chi.warnings);
      row.push_back(fmt(chi.value.real()));
      row.push_back(fmt(chi.value.imag()));
    }
    const ks::EitCheck eit = ks::check_eit(omega1, mp.doppler_width,
                                           mp.ground_relaxation, mp.gamma1);
    row.push_back(fmt(eit.margin));
    row.push_back(eit.satisfied ? "1" : "0");
    if (interchange) {
      const ks::InterchangeReport report =
          ks::interchange_check(mp, alpha1, omega1, om2, delta);
      row.push_back(fmt(report.mapped_big_delta));
      row.push_back(fmt(report.magnitude_ratio));
      row.push_back(fmt(report.phase_difference));
    }
    ctx.csv.row(row);
  }
}

// ---------------------------------------------------------------------------
// rotation: slope of magneto-optical rotation versus ellipticity, normalized
// at q = 0, next to the analytic enhancement curve.

void run_rotation(RunContext& ctx) {
  ObjectView root(ctx.config, "");

  std::vector<double> qs;
  if (root.has("values")) {
    const json& v = root.require("values");
    if (root.has("sweep")) {
      throw ConfigError("/sweep: give either values or sweep, not both");
    }
    if (!v.is_array() || v.empty()) {
      throw ConfigError("/values: expected a non-empty array of numbers");
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      qs.push_back(as_number(v[i], "/values/" + std::to_string(i)));
    }
  } else {
    ObjectView sweep = root.child("sweep");
    const std::string variable = sweep.text("variable", "ellipticity");
    if (variable != "ellipticity") {
      throw ConfigError("/sweep/variable: expected \"ellipticity\"");
    }
    const double lo = sweep.require_number("min");
    const double hi = sweep.require_number("max");
    const long long points = sweep.require_integer("points");
    const std::string scale = sweep.text("scale", "linear");
    if (scale != "linear") {
      throw ConfigError("/sweep/scale: ellipticity grids must be linear");
    }
    sweep.finish();
    qs = make_grid(lo, hi, points, false, "/sweep");
  }

  ks::RotationRunConfig rc;
  rc.gamma = root.number("gamma", 1.0);
  rc.gamma0 = root.number("gamma0", 1e-4);
  rc.zeeman_rate = root.number("zeeman_rate", 1.0);
  rc.peak_rabi = root.number("peak_rabi", 0.1);
  rc.b_step = root.number("b_step", 0.0);
  rc.richardson_check = root.boolean("richardson_check", true);
  rc.richardson_tol = root.number("richardson_tol", 0.005);
  rc.excited_zeeman_rate = root.number("excited_zeeman_rate", 0.0);
  rc.cell_length = root.number("cell_length", 1.0);
  rc.wavelength = root.number("wavelength", 1.0);
  rc.chi_scale = root.number("chi_scale", 1.0);
  rc.threads = ctx.threads;

  const std::string ground_model = root.text("ground_model", "isotropic");
  if (ground_model == "isotropic") {
    rc.ground_model = ks::GroundRelaxationModel::isotropic;
  } else if (ground_model == "dephasing") {
    rc.ground_model = ks::GroundRelaxationModel::dephasing_only;
  } else {
    throw ConfigError("/ground_model: expected \"isotropic\" or \"dephasing\"");
  }

  const std::string baseline = root.text("baseline", "full");
  if (baseline == "truncated") {
    rc.truncated_baseline = true;
  } else if (baseline != "full") {
    throw ConfigError("/baseline: expected \"full\" or \"truncated\"");
  }

  if (auto doppler = root.maybe_child("doppler")) {
    rc.doppler = true;
    rc.doppler_width = doppler->require_number("width");
    rc.velocity_points =
        static_cast<int>(doppler->integer("points", rc.velocity_points));
    doppler->finish();
    if (!(rc.doppler_width > 0.0)) {
      throw ConfigError("/doppler/width: must be > 0");
    }
    if (rc.velocity_points < 1) {
      throw ConfigError("/doppler/points: must be >= 1");
    }
  }
  root.finish();

  const ks::RotationScan scan = ks::scan_ellipticity(qs, rc);

  if (scan.audit.max_trace_error > 1e-10) {
    ctx.warnings.add({"trace-deviation",
                      "steady-state trace drifted beyond tolerance",
                      scan.audit.max_trace_error});
  }
  if (scan.audit.max_hermiticity_error > 1e-10) {
    ctx.warnings.add({"hermiticity-deviation",
                      "steady state is not Hermitian within tolerance",
                      scan.audit.max_hermiticity_error});
  }
  if (scan.audit.min_eigenvalue < -1e-8) {
    ctx.warnings.add({"negative-population",
                      "steady state has a negative eigenvalue",
                      scan.audit.min_eigenvalue});
  }

  ctx.csv.meta("doppler", rc.doppler
                              ? "on width=" + fmt(rc.doppler_width) +
                                    " points=" + fmt(rc.velocity_points)
                              : "off");
  ctx.csv.meta("baseline", baseline);
  ctx.csv.meta("ground_model", ground_model);
  ctx.csv.meta("reference_slope", fmt(scan.reference_slope));
  ctx.csv.meta("max_trace_error", fmt(scan.audit.max_trace_error));
  ctx.csv.meta("max_hermiticity_error", fmt(scan.audit.max_hermiticity_error));
  ctx.csv.meta("min_eigenvalue", fmt(scan.audit.min_eigenvalue));
  ctx.csv.columns({"ellipticity", "slope", "normalized_slope", "analytic"});
  for (const ks::RotationPoint& p : scan.points) {
    ctx.csv.row({fmt(p.ellipticity), fmt(p.slope), fmt(p.normalized),
                 fmt(p.analytic)});
  }
}

// ---------------------------------------------------------------------------
// phase-gate: conditional-phase truth table from a direct phase or from
// physical parameters.

void run_phase_gate(RunContext& ctx) {
  ObjectView root(ctx.config, "");
  ks::GateSpec spec;
  const bool has_eta = root.has("eta");
  const bool has_params = root.has("parameters");
  if (has_eta == has_params) {
    throw ConfigError("/eta: give exactly one of eta or parameters");
  }
  if (has_eta) {
    spec = ks::GateSpec::from_eta(root.require_number("eta"));
  } else {
    ObjectView params = root.child("parameters");
    const double delta = params.require_number("delta");
    const double xi1 = params.require_number("xi1");
    const double xi2 = params.require_number("xi2");
    const ks::cplx omega1 = params.require_complex("omega1");
    const ks::cplx omega2 = params.require_complex("omega2");
    const double time = params.require_number("time");
    const double hbar = params.number("hbar", 1.0);
    params.finish();
    spec = ks::GateSpec::from_parameters(delta, xi1, xi2, omega1, omega2,
                                         time, hbar);
  }
  root.finish();

  ctx.csv.meta("eta", fmt(spec.eta));
  ctx.csv.meta("provenance",
               spec.provenance == ks::GateSpec::Provenance::computed
                   ? "computed"
                   : "direct");
  ctx.csv.columns({"n1", "n2", "factor_re", "factor_im"});
  for (const ks::TruthTableRow& r : ks::truth_table(spec)) {
    ctx.csv.row({fmt(r.n1), fmt(r.n2), fmt(r.factor.real()),
                 fmt(r.factor.imag())});
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilevel-coherence Kerr-nonlinearity toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path = "-";
  std::string format = "csv";
  int threads = 1;
  unsigned long long seed = 0;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Path to the JSON run config")
        ->required();
    cmd->add_option("--out", out_path, "Output path ('-' for stdout)");
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv"}));
    cmd->add_option("--threads", threads, "Worker thread count")
        ->envname("KERRSIM_THREADS")
        ->check(CLI::Range(1, 4096));
    cmd->add_option("--seed", seed,
                    "Random seed (echoed into metadata; reserved for "
                    "randomized harnesses)");
  };

  add_common(app.add_subcommand(
      "dark-state", "Dark-state amplitudes and eigenvalue report"));
  add_common(app.add_subcommand(
      "susceptibility", "Susceptibility sweep with transparency diagnostics"));
  add_common(app.add_subcommand(
      "rotation", "Rotation slope versus ellipticity scan"));
  add_common(app.add_subcommand(
      "phase-gate", "Conditional-phase-gate truth table"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  const std::string subcommand = app.get_subcommands().front()->get_name();

  RunContext ctx;
  ctx.threads = threads;
  ctx.seed = seed;

  try {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "config error: cannot open " << config_path << "\n";
      return 2;
    }
    try {
      ctx.config = json::parse(in);
    } catch (const json::parse_error& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }

    ctx.csv.meta("kerrsim-version", ks::version);
    ctx.csv.meta("subcommand", subcommand);
    ctx.csv.meta("config", ctx.config.dump());

    if (subcommand == "dark-state") {
      run_dark_state(ctx);
    } else if (subcommand == "susceptibility") {
      run_susceptibility(ctx);
    } else if (subcommand == "rotation") {
      run_rotation(ctx);
    } else {
      run_phase_gate(ctx);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  ctx.csv.meta("threads", std::to_string(ctx.threads));
  ctx.csv.meta("seed", std::to_string(ctx.seed));
  ctx.csv.meta("warnings", std::to_string(ctx.warnings.total()));

  ctx.warnings.print(std::cerr);

  const std::string output = ctx.csv.str();
  if (out_path == "-") {
    std::cout << output;
    if (!std::cout) {
      std::cerr << "error: failed to write to stdout\n";
      return 1;
    }
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << output;
    if (!out) {
      std::cerr << "error: failed to write " << out_path << "\n";
      return 1;
    }
  }
  return 0;
}
