#include "spinrot_cli/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "spinrot/config.hpp"
#include "spinrot/error.hpp"
#include "spinrot/harness.hpp"

namespace spinrot::cli {

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> scenario;
  unsigned workers = 0;
};

ExperimentConfig resolve(const Options& o) {
  ExperimentConfig cfg = o.config_path.empty() ? ExperimentConfig::defaults() : load_config(o.config_path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.out_dir) cfg.output = *o.out_dir;
  if (o.scenario) cfg.scenario = *o.scenario;
  cfg.validate();
  return cfg;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void write_sweep(const ExperimentConfig& cfg, const std::string& stem, const SweepResult& r) {
  nlohmann::json sidecar = r.metadata;
  sidecar["fits"] = r.fits;
  write_outputs(cfg.output, stem, sweep_csv(r.points), sidecar);
}

int dispatch(const std::string& command, const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = resolve(o);
  if (command == "tau-scan") {
    const auto r = run_tau_scan(cfg, o.workers);
    write_sweep(cfg, "tau_scan", r);
    out << "tau-scan: " << r.points.size() << " points -> " << cfg.output << "/tau_scan.csv\n";
  } else if (command == "field-scan") {
    const auto r = run_field_scan(cfg, o.workers);
    write_sweep(cfg, "field_scan", r);
    out << "field-scan " << cfg.scenario << ": dS/dB = "
        << sci(r.fits["normalized"]["ds_db"].get<double>() * 1e-6) << " per uT -> " << cfg.output
        << "/field_scan.csv\n";
  } else if (command == "compare") {
    const auto r = run_compare(cfg, o.workers);
    write_sweep(cfg, "compare", r);
    out << "compare: ru_y/ramsey_z = " << sci(r.metadata["ratios"]["ru_y_over_ramsey_z"].get<double>())
        << ", ramsey_z/ramsey_y = " << sci(r.metadata["ratios"]["ramsey_z_over_ramsey_y"].get<double>())
        << " -> " << cfg.output << "/compare.csv\n";
  } else {
    std::vector<SensitivityReport> rows;
    if (command == "table1") {
      rows = run_table1(cfg, o.workers);
    } else {
      rows.push_back(run_sensitivity(cfg, o.workers));
    }
    nlohmann::json sidecar = run_metadata(cfg, SweepKind::report);
    sidecar["command"] = command;
    sidecar["rows"] = nlohmann::json::array();
    for (const auto& r : rows) sidecar["rows"].push_back(to_json(r));
    const std::string stem = command == "table1" ? "table1" : "sensitivity";
    write_outputs(cfg.output, stem, report_csv(rows), sidecar);
    for (const auto& r : rows) {
      out << r.scenario << ": eta_opr = " << sci(r.eta_opr * 1e6) << " uT/sqrt(Hz), eta_sn = "
          << sci(r.eta_sn_cycles * 1e6) << " (cycles) / " << sci(r.eta_sn_angular * 1e6)
          << " (angular) uT/sqrt(Hz)\n";
    }
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotating-NV magnetometry simulator", "spinrot"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--config", o.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("--seed", o.seed, "RNG seed (overrides config)");
  app.add_option("--out", o.out_dir, "Output directory (overrides config)");
  app.add_option("--workers", o.workers, "Worker threads, 0 = hardware concurrency")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--scenario", o.scenario, "Scenario for field-scan, tau-scan and sensitivity");

  std::string command;
  const std::pair<const char*, const char*> commands[] = {
      {"tau-scan", "Echo signal vs tau, stationary and rotating (and Ramsey)"},
      {"field-scan", "Signal vs test field at the scenario's tau, with sinusoid fit"},
      {"compare", "Ramsey-y, Ramsey-z and RU-y field scans with slope ratios"},
      {"table1", "Sensitivity rows for the four comparison configurations"},
      {"sensitivity", "Full sensitivity report for one scenario"}};
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->callback([&command, name = name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "spinrot: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    return dispatch(command, o, out);
  } catch (const ConfigError& e) {
    err << "spinrot: config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "spinrot: numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "spinrot: " << e.what() << "\n";
    return kRuntimeError;
  }
}

}  // namespace spinrot::cli
