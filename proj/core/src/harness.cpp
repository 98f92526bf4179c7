#include "spinrot/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spinrot/error.hpp"
#include "spinrot/parallel.hpp"
#include "spinrot/rng.hpp"

namespace spinrot {

using nlohmann::json;

std::vector<SweepPoint> SweepResult::branch(const std::string& name) const {
  std::vector<SweepPoint> out;
  for (const auto& p : points) {
    if (p.branch == name) out.push_back(p);
  }
  return out;
}

namespace {

// Per-scenario seed so different traces never share random streams.
std::uint64_t scenario_seed(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) h = (h ^ c) * 0x100000001b3ULL;
  return splitmix64(seed ^ h);
}

std::vector<double> grid(double start, double stop, double step) {
  std::vector<double> out;
  const auto n = static_cast<long long>(std::floor((stop - start) / step * (1.0 + 1e-12))) + 1;
  out.reserve(static_cast<std::size_t>(std::max(0LL, n)));
  for (long long i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<FitPoint> fit_points(const std::vector<SweepPoint>& pts) {
  std::vector<FitPoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back({p.abscissa, p.signal, p.sigma});
  return out;
}

// Echo or Ramsey contrast trace with zero test field.
std::vector<SweepPoint> contrast_trace(const Scenario& base, const std::vector<double>& taus,
                                       const std::string& branch, std::uint64_t seed,
                                       unsigned workers) {
  std::vector<SweepPoint> out(taus.size());
  parallel_for(taus.size(), workers, [&](std::size_t i) {
    Scenario sc = base;
    sc.tau = taus[i];
    sc.readout_phase = 0.0;
    if (sc.rotating() && sc.tau > sc.periods_per_shot * sc.rotor.period()) {
      throw ConfigError("sweep: tau " + fmt(sc.tau) + " s exceeds periods_per_shot rotation periods");
    }
    const FieldPoint fp = simulate_field_point(sc, 0.0, seed, i);
    out[i] = {sc.tau, fp.signal, fp.sigma, branch, fp.expected};
  });
  return out;
}

}  // namespace

json run_metadata(const ExperimentConfig& cfg, SweepKind kind) {
  ExperimentConfig echo = cfg;
  echo.sweep.kind = kind;
  return json{{"code_version", kCodeVersion},
              {"command", std::string(to_string(kind))},
              {"seed", cfg.seed},
              {"config", to_json(echo)}};
}

json to_json(const SinusoidFit& fit) {
  return json{{"amplitude", fit.amplitude},
              {"period", fit.period},
              {"phase", fit.phase},
              {"offset", fit.offset},
              {"ds_db", fit.ds_db()},
              {"amplitude_error", fit.amplitude_error},
              {"period_error", fit.period_error},
              {"chi2", fit.chi2},
              {"dof", fit.dof}};
}

json to_json(const SensitivityReport& r) {
  return json{{"scenario", r.scenario},
              {"ds_db", r.ds_db},
              {"ds_db_analytic", r.ds_db_analytic},
              {"phase_response", r.phase_response},
              {"sigma", r.sigma},
              {"delta_b_min", r.delta_b_min},
              {"eta_opr", r.eta_opr},
              {"eta_sn_cycles", r.eta_sn_cycles},
              {"eta_sn_angular", r.eta_sn_angular},
              {"phase_reduction", r.phase_reduction},
              {"eta_sn_reduced_cycles", r.eta_sn_reduced(GammaConvention::cycles)},
              {"eta_sn_reduced_angular", r.eta_sn_reduced(GammaConvention::angular)},
              {"t_int", r.t_int},
              {"tau", r.tau},
              {"t_dead", r.t_dead},
              {"n_reps", r.n_reps},
              {"flagged_points", r.flagged_points},
              {"fit", to_json(r.fit)}};
}

SweepResult run_tau_scan(const ExperimentConfig& cfg, unsigned workers) {
  cfg.validate();
  const Scenario& rotating = cfg.find_scenario(cfg.scenario);
  if (rotating.method == Method::ramsey) {
    throw ConfigError("scenario: tau-scan needs an echo-family scenario, '" + cfg.scenario + "' is ramsey");
  }
  const bool own_range = cfg.sweep.kind == SweepKind::tau_scan && cfg.sweep.has_range();
  const auto taus = own_range ? grid(*cfg.sweep.start, *cfg.sweep.stop, *cfg.sweep.step)
                              : grid(2e-6, 300e-6, 0.5e-6);

  Scenario stationary = rotating;
  stationary.name = rotating.name + "_stationary";
  stationary.rotor.f_rot = 0.0;

  SweepResult res;
  res.kind = SweepKind::tau_scan;
  const std::uint64_t seed = scenario_seed(cfg.seed, "tau-scan");
  auto append = [&](std::vector<SweepPoint> pts) {
    res.points.insert(res.points.end(), pts.begin(), pts.end());
  };
  append(contrast_trace(stationary, taus, "stationary", splitmix64(seed ^ 1), workers));
  append(contrast_trace(rotating, taus, "rotating", splitmix64(seed ^ 2), workers));

  json summary;
  const auto& d = rotating.decoherence;
  const double b_rot = effective_bz_for_bath(rotating.bias_bz, rotating.rotor.f_rot,
                                             rotating.bath_sense, d.gamma_c13);
  summary["bath_field_stationary"] = rotating.bias_bz;
  summary["bath_field_rotating"] = b_rot;
  if (rotating.bias_bz > 0.0) summary["revivals_stationary"] = revival_times(rotating.bias_bz, d, 8);
  if (b_rot > 0.0) summary["revivals_rotating"] = revival_times(b_rot, d, 8);

  if (cfg.tau_scan.include_ramsey) {
    Scenario ramsey = cfg.scenarios.contains("ramsey_y") ? cfg.find_scenario("ramsey_y")
                                                         : builtin_scenario(ScenarioId::ramsey_y);
    const auto rt = grid(cfg.tau_scan.ramsey_start, cfg.tau_scan.ramsey_stop, cfg.tau_scan.ramsey_step);
    append(contrast_trace(ramsey, rt, "ramsey", splitmix64(seed ^ 3), workers));
  }

  res.metadata = run_metadata(cfg, SweepKind::tau_scan);
  res.metadata["points"] = res.points.size();
  res.metadata["summary"] = summary;
  res.fits = nullptr;
  return res;
}

SweepResult run_field_scan(const ExperimentConfig& cfg, unsigned workers) {
  cfg.validate();
  const Scenario& sc = cfg.find_scenario(cfg.scenario);
  const bool own_range = cfg.sweep.kind == SweepKind::field_scan && cfg.sweep.has_range();
  const auto fields = own_range ? grid(*cfg.sweep.start, *cfg.sweep.stop, *cfg.sweep.step)
                                : auto_field_range(sc);
  const auto pts = simulate_field_scan(sc, fields, scenario_seed(cfg.seed, sc.name), workers);

  SweepResult res;
  res.kind = SweepKind::field_scan;
  std::size_t flagged = 0;
  for (const auto& p : pts) res.points.push_back({p.field, p.signal, p.sigma, "normalized", p.expected});
  const double shot_sigma = 1.0 / std::sqrt(sc.photon.photons_per_shot() * static_cast<double>(sc.photon.n_reps));
  for (const auto& p : pts) {
    res.points.push_back({p.field, p.branch_half, shot_sigma * std::sqrt(p.branch_half), "half_pi", 0.0});
    if (p.beyond_linear_bound) ++flagged;
  }
  for (const auto& p : pts) {
    res.points.push_back(
        {p.field, p.branch_threehalf, shot_sigma * std::sqrt(p.branch_threehalf), "three_half_pi", 0.0});
  }

  const SinusoidFit fit = fit_sinusoid(fit_points(res.branch("normalized")));
  res.fits = json{{"normalized", to_json(fit)}};
  res.metadata = run_metadata(cfg, SweepKind::field_scan);
  res.metadata["points"] = res.points.size();
  res.metadata["scenario"] = sc.name;
  res.metadata["flagged_points"] = flagged;
  res.metadata["analytic_ds_db"] = analytic_ds_db(sc);
  return res;
}

SweepResult run_compare(const ExperimentConfig& cfg, unsigned workers) {
  cfg.validate();
  const std::vector<std::string> names{"ramsey_y", "ramsey_z", "ru_y"};
  SweepResult res;
  res.kind = SweepKind::compare;
  res.fits = json::object();
  json slopes = json::object();
  json analytic = json::object();
  for (const auto& name : names) {
    const Scenario& sc = cfg.find_scenario(name);
    const auto pts = simulate_field_scan(sc, auto_field_range(sc), scenario_seed(cfg.seed, name), workers);
    std::vector<SweepPoint> trace;
    for (const auto& p : pts) trace.push_back({p.field, p.signal, p.sigma, name, p.expected});
    const SinusoidFit fit = fit_sinusoid(fit_points(trace));
    res.fits[name] = to_json(fit);
    slopes[name] = fit.ds_db();
    analytic[name] = analytic_ds_db(sc);
    res.points.insert(res.points.end(), trace.begin(), trace.end());

    // Linear region re-centred on the zero crossing nearest B = 0.
    const double b0 = fit.zero_crossing_near(0.0);
    for (const auto& p : trace) {
      if (std::abs(p.abscissa - b0) <= fit.period / 8.0) {
        res.points.push_back({p.abscissa - b0, p.signal - fit.offset, p.sigma, name + "_linear",
                              p.expected - fit.offset});
      }
    }
  }
  const Scenario& ry = cfg.find_scenario("ramsey_y");
  const Scenario& rz = cfg.find_scenario("ramsey_z");
  const double geometric = std::abs(axial_projection(0.0, rz.axis_unit(), rz.rotor)) /
                           std::abs(axial_projection(0.0, ry.axis_unit(), ry.rotor));
  res.metadata = run_metadata(cfg, SweepKind::compare);
  res.metadata["points"] = res.points.size();
  res.metadata["slopes"] = slopes;
  res.metadata["analytic_slopes"] = analytic;
  res.metadata["ratios"] = json{
      {"ru_y_over_ramsey_y", slopes["ru_y"].get<double>() / slopes["ramsey_y"].get<double>()},
      {"ru_y_over_ramsey_z", slopes["ru_y"].get<double>() / slopes["ramsey_z"].get<double>()},
      {"ramsey_z_over_ramsey_y", slopes["ramsey_z"].get<double>() / slopes["ramsey_y"].get<double>()},
      {"ramsey_z_over_ramsey_y_geometric", geometric}};
  return res;
}

std::vector<SensitivityReport> run_table1(const ExperimentConfig& cfg, unsigned workers) {
  cfg.validate();
  std::vector<SensitivityReport> rows;
  for (const char* name : {"ramsey_y", "ramsey_z", "ru_y", "ru_y_best"}) {
    ReportOptions opts;
    opts.seed = scenario_seed(cfg.seed, name);
    opts.workers = workers;
    rows.push_back(scenario_report(cfg.find_scenario(name), opts));
  }
  return rows;
}

SensitivityReport run_sensitivity(const ExperimentConfig& cfg, unsigned workers) {
  cfg.validate();
  const Scenario& sc = cfg.find_scenario(cfg.scenario);
  ReportOptions opts;
  opts.seed = scenario_seed(cfg.seed, sc.name);
  opts.workers = workers;
  if (cfg.sweep.kind == SweepKind::field_scan && cfg.sweep.has_range()) {
    opts.fields = grid(*cfg.sweep.start, *cfg.sweep.stop, *cfg.sweep.step);
  }
  return scenario_report(sc, opts);
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::string out = "abscissa,signal,sigma,branch\n";
  for (const auto& p : points) {
    out += fmt(p.abscissa) + ',' + fmt(p.signal) + ',' + fmt(p.sigma) + ',' + p.branch + '\n';
  }
  return out;
}

std::string report_csv(const std::vector<SensitivityReport>& rows) {
  std::string out =
      "scenario,ds_db,ds_db_analytic,sigma,delta_b_min,eta_opr,eta_sn_cycles,eta_sn_angular,"
      "phase_reduction,t_int,tau,t_dead,n_reps\n";
  for (const auto& r : rows) {
    out += r.scenario + ',' + fmt(r.ds_db) + ',' + fmt(r.ds_db_analytic) + ',' + fmt(r.sigma) + ',' +
           fmt(r.delta_b_min) + ',' + fmt(r.eta_opr) + ',' + fmt(r.eta_sn_cycles) + ',' +
           fmt(r.eta_sn_angular) + ',' + fmt(r.phase_reduction) + ',' + fmt(r.t_int) + ',' +
           fmt(r.tau) + ',' + fmt(r.t_dead) + ',' + std::to_string(r.n_reps) + '\n';
  }
  return out;
}

void write_outputs(const std::filesystem::path& dir, const std::string& stem, const std::string& csv,
                   const json& sidecar) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
  auto write = [&](const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
    out << text;
  };
  write(dir / (stem + ".csv"), csv);
  write(dir / (stem + ".json"), sidecar.dump(2) + "\n");
}

}  // namespace spinrot
