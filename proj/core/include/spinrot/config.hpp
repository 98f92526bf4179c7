#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "spinrot/scenario.hpp"

namespace spinrot {

inline constexpr int kSchemaVersion = 1;

enum class SweepKind { tau_scan, field_scan, compare, report };

std::string_view to_string(SweepKind k);
std::optional<SweepKind> sweep_kind_from(std::string_view s);

struct SweepSpec {
  SweepKind kind = SweepKind::field_scan;
  // Abscissa range in SI units of the sweep (seconds for tau-scan, tesla for
  // field-scan). All three unset means "choose automatically".
  std::optional<double> start;
  std::optional<double> stop;
  std::optional<double> step;

  bool has_range() const { return start.has_value(); }
};

struct TauScanOptions {
  bool include_ramsey = true;
  double ramsey_start = 10e-9;
  double ramsey_stop = 5e-6;
  double ramsey_step = 10e-9;
};

/// Declarative description of a run. Every scenario in `scenarios` starts
/// from its built-in defaults (ru_y for unknown names) and is overridden key
/// by key from the document.
struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::uint64_t seed = 1;
  std::string output = "out";
  std::string scenario = "ru_y";
  SweepSpec sweep{};
  TauScanOptions tau_scan{};
  std::map<std::string, Scenario> scenarios;

  /// Configuration with every built-in scenario at its defaults.
  static ExperimentConfig defaults();

  const Scenario& find_scenario(const std::string& name) const;
  /// Throws ConfigError listing every violation with its field path.
  void validate() const;
};

/// Parses and validates a config document. Unknown keys, wrong types and
/// out-of-range values are all reported together in one ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

/// Fully resolved document; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const ExperimentConfig& cfg);
nlohmann::json to_json(const Scenario& sc);

}  // namespace spinrot
