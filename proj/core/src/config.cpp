#include "spinrot/config.hpp"

#include <array>
#include <cstdint>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "spinrot/error.hpp"

namespace spinrot {

using nlohmann::json;

std::string_view to_string(SweepKind k) {
  switch (k) {
    case SweepKind::tau_scan: return "tau-scan";
    case SweepKind::field_scan: return "field-scan";
    case SweepKind::compare: return "compare";
    case SweepKind::report: return "report";
  }
  return "unknown";
}

std::optional<SweepKind> sweep_kind_from(std::string_view s) {
  for (auto k : {SweepKind::tau_scan, SweepKind::field_scan, SweepKind::compare, SweepKind::report}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

namespace {

using Errors = std::vector<std::string>;

// Walks one JSON object, records every key it consumes and reports the rest.
class Reader {
public:
  Reader(const json& obj, std::string path, Errors& errors)
      : obj_(obj), path_(std::move(path)), errors_(errors) {
    if (!obj_.is_object()) fail("", "expected an object");
  }

  ~Reader() {
    if (!obj_.is_object()) return;
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.contains(key)) fail(key, "unknown key");
    }
  }

  Reader(const Reader&) = delete;
  Reader& operator=(const Reader&) = delete;

  const json* find(const std::string& key) {
    if (!obj_.is_object()) return nullptr;
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (v->is_number()) {
        out = v->get<double>();
        if (!std::isfinite(out)) fail(key, "must be finite");
      } else {
        fail(key, "expected a number");
      }
    }
  }

  void optional_number(const std::string& key, std::optional<double>& out) {
    if (const json* v = find(key)) {
      if (v->is_null()) {
        out.reset();
      } else if (v->is_number()) {
        out = v->get<double>();
      } else {
        fail(key, "expected a number or null");
      }
    }
  }

  template <typename Int>
  void integer(const std::string& key, Int& out) {
    if (const json* v = find(key)) {
      if (v->is_number_integer()) {
        if constexpr (std::is_unsigned_v<Int>) {
          if (v->is_number_unsigned() || v->get<std::int64_t>() >= 0) {
            out = v->get<Int>();
          } else {
            fail(key, "must be a non-negative integer");
          }
        } else {
          out = v->get<Int>();
        }
      } else {
        fail(key, "expected an integer");
      }
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (v->is_boolean()) {
        out = v->get<bool>();
      } else {
        fail(key, "expected true or false");
      }
    }
  }

  void string(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (v->is_string()) {
        out = v->get<std::string>();
      } else {
        fail(key, "expected a string");
      }
    }
  }

  template <typename E, std::size_t N>
  void enumeration(const std::string& key, E& out,
                   const std::array<std::pair<std::string_view, E>, N>& names) {
    if (const json* v = find(key)) {
      if (v->is_string()) {
        for (const auto& [name, value] : names) {
          if (name == v->get<std::string>()) {
            out = value;
            return;
          }
        }
      }
      std::string allowed;
      for (const auto& [name, value] : names) allowed += (allowed.empty() ? "" : ", ") + std::string(name);
      fail(key, "expected one of: " + allowed);
    }
  }

  std::string child_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void fail(const std::string& key, const std::string& what) {
    const std::string where = key.empty() ? path_ : child_path(key);
    errors_.push_back((where.empty() ? "<root>" : where) + ": " + what);
  }

  Errors& errors() { return errors_; }

private:
  const json& obj_;
  std::string path_;
  Errors& errors_;
  std::set<std::string> seen_;
};

constexpr std::array<std::pair<std::string_view, Method>, 3> kMethods{{
    {"ramsey", Method::ramsey}, {"echo", Method::echo}, {"cpmg", Method::cpmg}}};
constexpr std::array<std::pair<std::string_view, ScanAxis>, 3> kAxes{{
    {"x", ScanAxis::x}, {"y", ScanAxis::y}, {"z", ScanAxis::z}}};
constexpr std::array<std::pair<std::string_view, Sense>, 2> kSenses{{
    {"co", Sense::co}, {"counter", Sense::counter}}};
constexpr std::array<std::pair<std::string_view, NoiseDbConvention>, 2> kDb{{
    {"amplitude", NoiseDbConvention::amplitude}, {"power", NoiseDbConvention::power}}};

template <typename E, std::size_t N>
std::string name_of(E value, const std::array<std::pair<std::string_view, E>, N>& names) {
  for (const auto& [name, v] : names) {
    if (v == value) return std::string(name);
  }
  return "unknown";
}

void read_scenario(const json& doc, const std::string& path, Scenario& sc, Errors& errors) {
  Reader r(doc, path, errors);
  r.enumeration("method", sc.method, kMethods);
  r.integer("n_pulses", sc.n_pulses);
  r.enumeration("axis", sc.axis, kAxes);
  r.number("bias_bz", sc.bias_bz);
  if (const json* v = r.find("rotor")) {
    Reader rr(*v, r.child_path("rotor"), errors);
    rr.number("f_rot", sc.rotor.f_rot);
    rr.number("theta_nv", sc.rotor.theta_nv);
    rr.number("phi0", sc.rotor.phi0);
    rr.number("d_zfs", sc.rotor.d_zfs);
    rr.number("gamma_e", sc.rotor.gamma_e);
  }
  r.enumeration("bath_sense", sc.bath_sense, kSenses);
  r.number("tau", sc.tau);
  r.boolean("sync_zero_crossing", sc.sync_zero_crossing);
  if (const json* v = r.find("decoherence")) {
    Reader rd(*v, r.child_path("decoherence"), errors);
    auto& d = sc.decoherence;
    rd.number("t2_star", d.t2_star);
    rd.number("t2", d.t2);
    rd.number("stretch_n", d.stretch_n);
    rd.number("gamma_c13", d.gamma_c13);
    rd.number("hyperfine_a", d.hyperfine_a);
    rd.number("revival_width", d.revival_width);
    rd.number("ramsey_detuning", d.ramsey_detuning);
    rd.boolean("c13_revivals", d.c13_revivals);
  }
  if (const json* v = r.find("photon")) {
    Reader rp(*v, r.child_path("photon"), errors);
    auto& p = sc.photon;
    rp.number("rate", p.rate);
    rp.number("read_window", p.read_window);
    rp.number("contrast_c", p.contrast_c);
    rp.number("excess_noise_db", p.excess_noise_db);
    rp.integer("n_reps", p.n_reps);
    rp.enumeration("db_convention", p.db_convention, kDb);
  }
  if (const json* v = r.find("timing")) {
    Reader rt(*v, r.child_path("timing"), errors);
    rt.number("laser_pulse", sc.laser_pulse);
    rt.integer("periods_per_shot", sc.periods_per_shot);
    rt.number("ramsey_dead_margin", sc.ramsey_dead_margin);
  }
  r.number("t_int", sc.t_int);
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig cfg;
  for (auto id : all_scenarios()) cfg.scenarios.emplace(std::string(to_string(id)), builtin_scenario(id));
  return cfg;
}

const Scenario& ExperimentConfig::find_scenario(const std::string& name) const {
  auto it = scenarios.find(name);
  if (it == scenarios.end()) throw ConfigError("scenario: no scenario named '" + name + "'");
  return it->second;
}

namespace {

void collect_validation_errors(const ExperimentConfig& cfg, Errors& errors) {
  [[maybe_unused]] const auto& [schema_version, seed, output, scenario, sweep, tau_scan, scenarios] = cfg;
  if (schema_version != kSchemaVersion) {
    errors.push_back("schema_version: unsupported version " + std::to_string(schema_version) +
                     " (expected " + std::to_string(kSchemaVersion) + ")");
  }
  if (!scenarios.contains(scenario)) errors.push_back("scenario: no scenario named '" + scenario + "'");
  if (output.empty()) errors.push_back("output: must not be empty");
  const int set = sweep.start.has_value() + sweep.stop.has_value() + sweep.step.has_value();
  if (set != 0 && set != 3) {
    errors.push_back("sweep: start, stop and step must be given together or all null");
  } else if (set == 3) {
    if (!(*sweep.step > 0.0)) errors.push_back("sweep.step: must be > 0");
    if (!(*sweep.stop > *sweep.start)) errors.push_back("sweep.stop: range is empty (stop <= start)");
  }
  if (!(tau_scan.ramsey_step > 0.0)) errors.push_back("tau_scan.ramsey_step: must be > 0");
  if (!(tau_scan.ramsey_start >= 0.0)) errors.push_back("tau_scan.ramsey_start: must be >= 0");
  if (!(tau_scan.ramsey_stop > tau_scan.ramsey_start)) {
    errors.push_back("tau_scan.ramsey_stop: range is empty (stop <= start)");
  }
  for (const auto& [name, sc] : scenarios) {
    if (sc.name != name) errors.push_back("scenarios." + name + ": name mismatch");
    try {
      sc.validate();
    } catch (const ConfigError& e) {
      errors.push_back(e.what());
    }
  }
}

[[noreturn]] void throw_errors(const Errors& errors) {
  std::ostringstream os;
  os << "invalid configuration (" << errors.size() << " error" << (errors.size() > 1 ? "s" : "") << "):";
  for (const auto& e : errors) os << "\n  " << e;
  throw ConfigError(os.str());
}

}  // namespace

void ExperimentConfig::validate() const {
  Errors errors;
  collect_validation_errors(*this, errors);
  if (!errors.empty()) throw_errors(errors);
}

ExperimentConfig parse_config(const json& doc) {
  ExperimentConfig cfg = ExperimentConfig::defaults();
  Errors errors;
  {
    Reader r(doc, "", errors);
    r.integer("schema_version", cfg.schema_version);
    if (doc.is_object() && !doc.contains("schema_version")) {
      errors.push_back("schema_version: required");
    }
    r.integer("seed", cfg.seed);
    r.string("output", cfg.output);
    r.string("scenario", cfg.scenario);
    if (const json* v = r.find("sweep")) {
      Reader rs(*v, "sweep", errors);
      std::string kind(to_string(cfg.sweep.kind));
      rs.string("kind", kind);
      if (auto k = sweep_kind_from(kind)) {
        cfg.sweep.kind = *k;
      } else {
        rs.fail("kind", "expected one of: tau-scan, field-scan, compare, report");
      }
      rs.optional_number("start", cfg.sweep.start);
      rs.optional_number("stop", cfg.sweep.stop);
      rs.optional_number("step", cfg.sweep.step);
    }
    if (const json* v = r.find("tau_scan")) {
      Reader rt(*v, "tau_scan", errors);
      rt.boolean("include_ramsey", cfg.tau_scan.include_ramsey);
      rt.number("ramsey_start", cfg.tau_scan.ramsey_start);
      rt.number("ramsey_stop", cfg.tau_scan.ramsey_stop);
      rt.number("ramsey_step", cfg.tau_scan.ramsey_step);
    }
    if (const json* v = r.find("scenarios")) {
      if (!v->is_object()) {
        errors.push_back("scenarios: expected an object");
      } else {
        for (const auto& [name, body] : v->items()) {
          Scenario sc = builtin_scenario(scenario_id_from(name).value_or(ScenarioId::ru_y));
          sc.name = name;
          read_scenario(body, "scenarios." + name, sc, errors);
          cfg.scenarios[name] = std::move(sc);
        }
      }
    }
  }
  collect_validation_errors(cfg, errors);
  if (!errors.empty()) throw_errors(errors);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const Scenario& sc) {
  const auto& d = sc.decoherence;
  const auto& p = sc.photon;
  return json{
      {"method", name_of(sc.method, kMethods)},
      {"n_pulses", sc.n_pulses},
      {"axis", name_of(sc.axis, kAxes)},
      {"bias_bz", sc.bias_bz},
      {"rotor",
       {{"f_rot", sc.rotor.f_rot},
        {"theta_nv", sc.rotor.theta_nv},
        {"phi0", sc.rotor.phi0},
        {"d_zfs", sc.rotor.d_zfs},
        {"gamma_e", sc.rotor.gamma_e}}},
      {"bath_sense", name_of(sc.bath_sense, kSenses)},
      {"tau", sc.tau},
      {"sync_zero_crossing", sc.sync_zero_crossing},
      {"decoherence",
       {{"t2_star", d.t2_star},
        {"t2", d.t2},
        {"stretch_n", d.stretch_n},
        {"gamma_c13", d.gamma_c13},
        {"hyperfine_a", d.hyperfine_a},
        {"revival_width", d.revival_width},
        {"ramsey_detuning", d.ramsey_detuning},
        {"c13_revivals", d.c13_revivals}}},
      {"photon",
       {{"rate", p.rate},
        {"read_window", p.read_window},
        {"contrast_c", p.contrast_c},
        {"excess_noise_db", p.excess_noise_db},
        {"n_reps", p.n_reps},
        {"db_convention", name_of(p.db_convention, kDb)}}},
      {"timing",
       {{"laser_pulse", sc.laser_pulse},
        {"periods_per_shot", sc.periods_per_shot},
        {"ramsey_dead_margin", sc.ramsey_dead_margin}}},
      {"t_int", sc.t_int},
  };
}

json to_json(const ExperimentConfig& cfg) {
  json scenarios = json::object();
  for (const auto& [name, sc] : cfg.scenarios) scenarios[name] = to_json(sc);
  return json{
      {"schema_version", cfg.schema_version},
      {"seed", cfg.seed},
      {"output", cfg.output},
      {"scenario", cfg.scenario},
      {"sweep",
       {{"kind", std::string(to_string(cfg.sweep.kind))},
        {"start", optional_json(cfg.sweep.start)},
        {"stop", optional_json(cfg.sweep.stop)},
        {"step", optional_json(cfg.sweep.step)}}},
      {"tau_scan",
       {{"include_ramsey", cfg.tau_scan.include_ramsey},
        {"ramsey_start", cfg.tau_scan.ramsey_start},
        {"ramsey_stop", cfg.tau_scan.ramsey_stop},
        {"ramsey_step", cfg.tau_scan.ramsey_step}}},
      {"scenarios", scenarios},
  };
}

}  // namespace spinrot
