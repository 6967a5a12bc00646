#include "thcs/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "thcs/config.hpp"
#include "thcs/experiments.hpp"
#include "thcs/report_json.hpp"
#include "thcs/snapshot.hpp"
#include "thcs/timeseries.hpp"

namespace thcs {
namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string quoted(const std::string& s) {
  std::ostringstream os;
  os << std::quoted(s);
  return os.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  f << text;
  f.close();
  if (!f) throw Error("failed writing " + path.string());
}

fs::path prepare_out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

std::vector<double> parse_eta_list(const std::string& text) {
  std::vector<double> etas;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') throw ConfigError("--eta-list", "cannot parse \"" + item + "\" as a number");
    etas.push_back(v);
  }
  if (etas.empty()) throw ConfigError("--eta-list", "needs at least one value");
  return etas;
}

struct Options {
  std::string config;
  std::string resume;
  std::string eta_list;
  double horizon = 0.0;
  int resolution = 64;
  int trials = 1000;
  std::uint64_t seed = 7;
  std::string audit_out;
};

int run_command(const Options& o, std::ostream& out) {
  const RunConfig cfg = load_config(o.config);
  State initial = build_initial_state(cfg);
  ModelParams params = cfg.model;
  if (!o.resume.empty()) {
    Snapshot snap = read_snapshot(o.resume);
    if (snap.params.grid != params.grid || snap.params.nu != params.nu || snap.params.prandtl != params.prandtl ||
        snap.params.n_squared != params.n_squared) {
      throw ConfigError("--resume", "snapshot parameters differ from the config");
    }
    initial = std::move(snap.state);
  }
  if (!(cfg.t_end > initial.time)) throw ConfigError("output.t_end", "must exceed the start time " + fmt(initial.time));
  const fs::path dir = prepare_out_dir(cfg);
  write_text(dir / "config.json", config_echo(cfg));
  const StepControl ctrl = build_step_control(cfg, initial);
  try {
    const SimulationResult r = simulate(initial, params, build_forcing(cfg), ctrl, cfg.t_end, cfg.sample_every);
    write_timeseries(r.records, (dir / "timeseries.csv").string());
    write_snapshot(r.final_state, params, (dir / "final.thcs").string());
    write_text(dir / "report.json", run_summary_json(params, r.records, r.steps, r.dt));
    out << "status=ok command=run t=" << fmt(r.final_state.time) << " steps=" << r.steps
        << " energy=" << fmt(r.records.back().energy) << " out_dir=" << quoted(dir.string()) << "\n";
    return kExitOk;
  } catch (const SimulationDiverged& e) {
    if (!e.partial_records().empty()) write_timeseries(e.partial_records(), (dir / "timeseries.csv").string());
    out << "status=divergence command=run t=" << fmt(e.time()) << " out_dir=" << quoted(dir.string()) << "\n";
    return kExitDivergence;
  }
}

int decay_command(const Options& o, std::ostream& out) {
  const RunConfig cfg = load_config(o.config);
  const State initial = build_initial_state(cfg);
  const fs::path dir = prepare_out_dir(cfg);
  write_text(dir / "config.json", config_echo(cfg));
  const StepControl ctrl = build_step_control(cfg, initial);
  try {
    const DecayExperimentReport r = run_decay_experiment(cfg.model, initial, ctrl, cfg.t_end, cfg.sample_every);
    write_timeseries(r.records, (dir / "timeseries.csv").string());
    write_text(dir / "decay.json", to_json(r));
    const auto& energy_fit = r.fits.at("energy");
    out << "status=ok command=decay energy_rate="
        << (energy_fit.fit ? fmt(energy_fit.fit->rate) : std::string("none"))
        << " envelope_ok=" << (r.envelope_ok ? "true" : "false") << " out_dir=" << quoted(dir.string())
        << "\n";
    return kExitOk;
  } catch (const SimulationDiverged& e) {
    if (!e.partial_records().empty()) write_timeseries(e.partial_records(), (dir / "timeseries.csv").string());
    out << "status=divergence command=decay t=" << fmt(e.time()) << " out_dir=" << quoted(dir.string()) << "\n";
    return kExitDivergence;
  }
}

int average_command(const Options& o, std::ostream& out) {
  RunConfig cfg = load_config(o.config);
  if (!o.eta_list.empty()) cfg.averaging.eta_values = parse_eta_list(o.eta_list);
  if (o.horizon != 0.0) {
    if (!(o.horizon > 0.0)) throw ConfigError("--horizon", "must be positive");
    cfg.averaging.horizon = o.horizon;
  }
  const State initial = build_initial_state(cfg);
  const ForcingSpec spec = build_forcing(cfg);
  const fs::path dir = prepare_out_dir(cfg);
  write_text(dir / "config.json", config_echo(cfg));
  StepControl ctrl = build_step_control(cfg, initial);
  const AveragingExperimentReport report =
      run_averaging_experiment(cfg.model, initial, spec, cfg.averaging.eta_values, cfg.averaging.horizon, ctrl);
  write_text(dir / "average.json", to_json(report));
  bool diverged = false;
  double first_divergence = 0.0;
  for (const auto& run : report.runs) {
    if (run.diverged && !diverged) {
      diverged = true;
      first_divergence = run.eta;
    }
  }
  if (diverged) {
    out << "status=divergence command=average eta=" << fmt(first_divergence) << " out_dir=" << quoted(dir.string())
        << "\n";
    return kExitDivergence;
  }
  double worst = 0.0;
  for (double e : report.sup_errors) worst = std::max(worst, e);
  out << "status=ok command=average max_sup_error=" << fmt(worst)
      << " monotone=" << (report.monotone ? "true" : "false") << " out_dir=" << quoted(dir.string()) << "\n";
  return kExitOk;
}

int audit_command(const Options& o, std::ostream& out) {
  WaveGrid grid(64);
  try {
    grid = WaveGrid(o.resolution);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("--resolution", e.what());
  }
  if (o.trials < 1) throw ConfigError("--trials", "must be >= 1");
  AuditOptions opts;
  opts.trials = o.trials;
  opts.seed = o.seed;
  const InequalityAudit audit = inequality_audit(grid, opts);
  const std::string report = to_json(audit);
  if (!o.audit_out.empty()) write_text(o.audit_out, report);
  out << report;
  out << "status=ok command=audit jacobian_self=" << fmt(audit.jacobian_self.value)
      << " h2_ratio=" << fmt(audit.h2_ratio.value) << " l4_ratio=" << fmt(audit.l4_ratio.value) << "\n";
  return kExitOk;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermohaline vorticity-density simulator and verification harness", "thcs"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "simulate a config and write the time series, snapshot and summary");
  run->add_option("--config", o.config, "JSON run config")->required();
  run->add_option("--resume", o.resume, "start from a snapshot instead of the configured initial state");

  auto* decay = app.add_subcommand("decay", "unforced run with decay-rate fits and the decay certificate");
  decay->add_option("--config", o.config, "JSON run config")->required();

  auto* average = app.add_subcommand("average", "forced against averaged trajectories over an eta ladder");
  average->add_option("--config", o.config, "JSON run config")->required();
  average->add_option("--eta-list", o.eta_list, "comma-separated eta values, e.g. 4,16,64,256");
  average->add_option("--horizon", o.horizon, "comparison horizon T");

  auto* audit = app.add_subcommand("audit", "randomized audit of the functional inequalities");
  audit->add_option("--resolution", o.resolution, "grid resolution (power of two >= 16)");
  audit->add_option("--trials", o.trials, "number of random trials");
  audit->add_option("--seed", o.seed, "generator seed");
  audit->add_option("--out", o.audit_out, "also write the JSON report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    out << "status=error kind=usage message=" << quoted(e.what()) << "\n";
    return kExitValidation;
  }

  try {
    if (run->parsed()) return run_command(o, out);
    if (decay->parsed()) return decay_command(o, out);
    if (average->parsed()) return average_command(o, out);
    return audit_command(o, out);
  } catch (const DivergenceError& e) {
    out << "status=divergence t=" << fmt(e.time()) << "\n";
    return kExitDivergence;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    out << "status=error kind=validation field=" << quoted(e.field()) << " message=" << quoted(e.what()) << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    out << "status=error kind=validation message=" << quoted(e.what()) << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    out << "status=error kind=runtime message=" << quoted(e.what()) << "\n";
    return kExitValidation;
  }
}

}  // namespace thcs
