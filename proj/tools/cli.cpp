#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "sqcavity/approx.hpp"
#include "sqcavity/config.hpp"
#include "sqcavity/errors.hpp"
#include "sqcavity/experiment.hpp"
#include "sqcavity/parallel.hpp"
#include "sqcavity/records.hpp"

namespace sqcavity::cli {

namespace fs = std::filesystem;

namespace {

std::string run_context(const SystemParams& p) {
  std::ostringstream s;
  s << "alpha=" << std::abs(p.alpha) << " r=" << p.squeeze.r << " g/2pi=" << to_ghz_over_2pi(p.g)
    << " GHz Gamma/2pi=" << to_ghz_over_2pi(p.Gamma) * 1e3 << " MHz sigma=" << p.sigma << " ns";
  return s.str();
}

struct Options {
  std::string config;
  fs::path out_dir = ".";
  unsigned threads = default_threads();
  int figure = 0;
  std::string grid_override;
};

int simulate(const Options& o, std::ostream& out) {
  const RunConfig cfg = load_config(o.config);
  RunReport report;
  Trajectory traj;
  try {
    traj = integrate(cfg.params, cfg.settings);
    if (cfg.params.Gamma == 0.0) {
      report = make_report(traj, traj);
    } else {
      report = make_report(traj, reference_run(cfg.params, cfg.settings));
    }
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + " [" + run_context(cfg.params) + "]");
  }
  write_csv(o.out_dir / "trajectory.csv", trajectory_table(traj));
  write_json(o.out_dir / "report.json", to_json(report));
  out << to_json(report).dump(2) << "\n";
  return kOk;
}

int sweep(const Options& o, std::ostream& out) {
  const RunConfig cfg = load_config(o.config);
  const auto spec = sweep_spec_from(
      cfg, o.figure, o.grid_override.empty() ? std::nullopt : std::optional(o.grid_override));
  const auto rows = run_sweep(spec, o.threads);
  const fs::path path = o.out_dir / ("sweep_fig" + std::to_string(o.figure) + ".csv");
  write_csv(path, sweep_table(spec, rows));
  std::size_t failed = 0;
  for (const auto& row : rows) failed += row.report ? 0 : 1;
  out << path.string() << ": " << rows.size() << " rows, " << failed << " failed\n";
  return kOk;
}

int phase_match(const Options& o, std::ostream& out) {
  const RunConfig cfg = load_config(o.config);
  const auto spec = phase_match_spec_from(cfg);
  const auto rows = run_phase_match(spec, o.threads);
  const fs::path path = o.out_dir / "phase_match.csv";
  write_csv(path, phase_match_table(rows));
  std::size_t failed = 0;
  for (const auto& row : rows) failed += row.report ? 0 : 1;
  out << path.string() << ": " << rows.size() << " rows, " << failed << " failed\n";
  return kOk;
}

int approx(const Options& o, std::ostream& out) {
  const RunConfig cfg = load_config(o.config);
  out << to_json(approx_report(cfg.params)).dump(2) << "\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dispersive cavity-QED simulator for squeezed and coherent pulses", "sqcavity"};
  app.require_subcommand(1);
  Options o;

  auto* sim = app.add_subcommand("simulate", "Integrate one run; writes trajectory.csv and report.json");
  sim->add_option("config", o.config, "config JSON")->required();
  sim->add_option("--out-dir", o.out_dir, "output directory");

  auto* sw = app.add_subcommand("sweep", "One-parameter sweep; writes sweep_figN.csv");
  sw->add_option("config", o.config, "config JSON")->required();
  sw->add_option("--figure", o.figure, "3 Gamma, 4 alpha, 5 g, 6 r (g rescaled), 7 sigma")
      ->required()
      ->check(CLI::IsMember({3, 4, 5, 6, 7}));
  sw->add_option("--grid-override", o.grid_override, "lin:a:b:n, log:a:b:n or v1,v2,...");
  sw->add_option("--out-dir", o.out_dir, "output directory");
  sw->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);

  auto* pm = app.add_subcommand("phase-match", "Match phase shifts across squeeze factors; writes phase_match.csv");
  pm->add_option("config", o.config, "config JSON")->required();
  pm->add_option("--out-dir", o.out_dir, "output directory");
  pm->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);

  auto* ap = app.add_subcommand("approx", "Print the far-detuned estimates as JSON");
  ap->add_option("config", o.config, "config JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*sim) return simulate(o, out);
    if (*sw) return sweep(o, out);
    if (*pm) return phase_match(o, out);
    return approx(o, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoError;
  }
}

}  // namespace sqcavity::cli
