#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spinrot/config.hpp"
#include "spinrot/scenario.hpp"

namespace spinrot {

inline constexpr const char* kCodeVersion = "spinrot 0.1.0";

/// One CSV record.
struct SweepPoint {
  double abscissa = 0.0;
  double signal = 0.0;
  double sigma = 0.0;
  std::string branch;
  /// Noise-free model value; kept in memory only, not written to CSV.
  double expected = 0.0;
};

struct SweepResult {
  SweepKind kind = SweepKind::field_scan;
  std::vector<SweepPoint> points;
  /// Resolved config echo, code version, seed and per-command summaries.
  nlohmann::json metadata;
  /// Sinusoid fits keyed by branch or scenario; null when not applicable.
  nlohmann::json fits;

  std::vector<SweepPoint> branch(const std::string& name) const;
};

/// Echo contrast versus interrogation time, stationary and rotating, plus an
/// optional Ramsey trace.
SweepResult run_tau_scan(const ExperimentConfig& cfg, unsigned workers = 0);

/// Normalized signal and both raw branches versus the applied test field for
/// cfg.scenario, with a sinusoid fit of the normalized fringe.
SweepResult run_field_scan(const ExperimentConfig& cfg, unsigned workers = 0);

/// Ramsey-y, Ramsey-z and RU-y field scans with slopes, ratios and the
/// zero-centred linear regions.
SweepResult run_compare(const ExperimentConfig& cfg, unsigned workers = 0);

/// Sensitivity budget rows for ramsey_y, ramsey_z, ru_y and ru_y_best.
std::vector<SensitivityReport> run_table1(const ExperimentConfig& cfg, unsigned workers = 0);

/// Sensitivity budget for cfg.scenario.
SensitivityReport run_sensitivity(const ExperimentConfig& cfg, unsigned workers = 0);

nlohmann::json to_json(const SinusoidFit& fit);
nlohmann::json to_json(const SensitivityReport& r);

/// Metadata common to every command's JSON sidecar.
nlohmann::json run_metadata(const ExperimentConfig& cfg, SweepKind kind);

/// `abscissa,signal,sigma,branch` with a header row and LF line endings.
std::string sweep_csv(const std::vector<SweepPoint>& points);
std::string report_csv(const std::vector<SensitivityReport>& rows);

/// Writes <dir>/<stem>.csv and <dir>/<stem>.json, creating dir if needed.
void write_outputs(const std::filesystem::path& dir, const std::string& stem, const std::string& csv,
                   const nlohmann::json& sidecar);

}  // namespace spinrot
