#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "sqcavity/config.hpp"
#include "sqcavity/experiment.hpp"
#include "sqcavity/records.hpp"
#include "sqcavity/sweep.hpp"

using namespace sqcavity;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "sqcavity");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json base_config() {
  return json{{"alpha", 100},
              {"r", 1},
              {"g_over_2pi_GHz", 0.17},
              {"Gamma_over_2pi_MHz", 1},
              {"kappa_over_2pi_GHz", 0.2},
              {"gamma_over_2pi_GHz", 0.2},
              {"Omega_over_2pi_GHz", 100},
              {"sigma_ns", 3}};
}

std::string write_config(const fs::path& dir, const std::string& name, const json& doc) {
  const auto path = dir / name;
  std::ofstream(path) << doc.dump(2);
  return path.string();
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

fs::path source_dir() {
  const char* env = std::getenv("SQCAVITY_SOURCE_DIR");
  return env ? fs::path(env) : fs::current_path();
}

}  // namespace

TEST_SUITE("simulate") {
  TEST_CASE("squeezed run writes trajectory and report") {
    const auto dir = oracle::scratch_dir("cli_simulate");
    const auto cfg = write_config(dir, "fig2.json", base_config());
    const auto r = run({"simulate", cfg, "--out-dir", (dir / "out").string()});
    REQUIRE(r.code == cli::kOk);
    const auto traj = read_csv(dir / "out" / "trajectory.csv");
    CHECK(traj.header == trajectory_columns());
    CHECK(traj.rows.size() == 2001);
    for (const auto& row : traj.rows) {
      REQUIRE(row.size() == 11);
      for (const auto& cell : row) REQUIRE(std::isfinite(parse_number(cell)));
    }
    CHECK(parse_number(traj.rows.front()[0]) == -18.0);
    CHECK(parse_number(traj.rows.back()[0]) == 18.0);
    const auto report = run_report_from_json(read_json(dir / "out" / "report.json"));
    CHECK(std::abs(report.theta + 0.01353) < 0.01 * 0.01353);
    CHECK(report.loss_fraction > 0.65e-7);
    CHECK(report.loss_fraction < 2.6e-7);
    CHECK(run_report_from_json(json::parse(r.out)) == report);
  }

  TEST_CASE("no coupling") {
    const auto dir = oracle::scratch_dir("cli_g0");
    auto doc = base_config();
    doc["g_over_2pi_GHz"] = 0;
    const auto r = run({"simulate", write_config(dir, "c.json", doc), "--out-dir", dir.string()});
    REQUIRE(r.code == cli::kOk);
    const auto report = run_report_from_json(read_json(dir / "report.json"));
    CHECK(report.theta == 0.0);
    CHECK(report.F == 1.0);
  }

  TEST_CASE("coherent run fidelity") {
    const auto dir = oracle::scratch_dir("cli_coherent");
    auto doc = base_config();
    doc["alpha"] = 10;
    doc["r"] = 0;
    doc.erase("Gamma_over_2pi_MHz");
    doc["Gamma_over_2pi_GHz"] = 1e-3;
    const auto r = run({"simulate", write_config(dir, "c.json", doc), "--out-dir", dir.string()});
    REQUIRE(r.code == cli::kOk);
    const auto report = run_report_from_json(read_json(dir / "report.json"));
    CHECK(std::abs(report.F - 0.999997) < 2e-6);
  }
}

TEST_SUITE("other subcommands") {
  TEST_CASE("approx prints the estimates") {
    const auto dir = oracle::scratch_dir("cli_approx");
    const auto r = run({"approx", write_config(dir, "c.json", base_config())});
    REQUIRE(r.code == cli::kOk);
    const auto j = json::parse(r.out);
    CHECK(j.size() == 4);
    CHECK(j.at("theta_approx").get<double>() < 0.0);
  }

  TEST_CASE("sweep with a grid override") {
    const auto dir = oracle::scratch_dir("cli_sweep");
    const auto cfg = write_config(dir, "c.json", base_config());
    const auto r = run({"sweep", cfg, "--figure", "3", "--grid-override", "log:1e-3:1:3", "--out-dir", dir.string(),
                        "--threads", "2"});
    REQUIRE(r.code == cli::kOk);
    const auto t = read_csv(dir / "sweep_fig3.csv");
    CHECK(t.header == sweep_columns());
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0][0] == "Gamma_over_2pi_GHz");
    CHECK(t.rows[2][1] == "1");
    for (const auto& row : t.rows) CHECK(row.back().empty());
  }

  TEST_CASE("phase match") {
    const auto dir = oracle::scratch_dir("cli_phase");
    auto doc = base_config();
    doc["Gamma_over_2pi_MHz"] = 10;
    doc["phase_match"] = {{"theta_targets", {-0.005}}};
    const auto r = run({"phase-match", write_config(dir, "c.json", doc), "--out-dir", dir.string()});
    REQUIRE(r.code == cli::kOk);
    const auto t = read_csv(dir / "phase_match.csv");
    REQUIRE(t.rows.size() == 2);
    CHECK(parse_number(t.rows[0][4]) >= parse_number(t.rows[1][4]));
  }
}

TEST_SUITE("exit codes") {
  TEST_CASE("usage and config errors") {
    const auto dir = oracle::scratch_dir("cli_errors");
    CHECK(run({}).code == cli::kConfigError);
    CHECK(run({"launch"}).code == cli::kConfigError);
    CHECK(run({"--help"}).code == cli::kOk);
    const auto good = write_config(dir, "good.json", base_config());
    CHECK(run({"sweep", good, "--figure", "8"}).code == cli::kConfigError);
    CHECK(run({"sweep", good, "--figure", "3", "--grid-override", "lin:1"}).code == cli::kConfigError);
    auto doc = base_config();
    doc["colour"] = "red";
    const auto r = run({"simulate", write_config(dir, "bad.json", doc), "--out-dir", dir.string()});
    CHECK(r.code == cli::kConfigError);
    CHECK(r.err.find("colour") != std::string::npos);
  }

  TEST_CASE("numerical failure") {
    const auto dir = oracle::scratch_dir("cli_numerical");
    auto doc = base_config();
    doc["alpha"] = 300;
    doc["g_over_2pi_GHz"] = 0.6;
    const auto r = run({"simulate", write_config(dir, "c.json", doc), "--out-dir", dir.string()});
    CHECK(r.code == cli::kNumericalError);
    CHECK(r.err.find("dispersive") != std::string::npos);
    CHECK(r.err.find("alpha=300") != std::string::npos);
  }

  TEST_CASE("I/O failure") {
    const auto dir = oracle::scratch_dir("cli_io");
    CHECK(run({"simulate", (dir / "missing.json").string()}).code == cli::kIoError);
    std::ofstream(dir / "blocker") << "x";
    const auto cfg = write_config(dir, "c.json", base_config());
    CHECK(run({"simulate", cfg, "--out-dir", (dir / "blocker" / "out").string()}).code == cli::kIoError);
  }
}

TEST_CASE("shipped configs load") {
  const auto dir = source_dir() / "configs";
  REQUIRE(fs::is_directory(dir));
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    const auto cfg = load_config(entry.path());
    ++seen;
    const std::string stem = entry.path().stem().string();
    if (stem.size() == 4 && stem.rfind("fig", 0) == 0 && stem[3] >= '3' && stem[3] <= '7') {
      CHECK_NOTHROW(sweep_spec_from(cfg, stem[3] - '0'));
    }
    if (stem == "fig8") {
      const auto spec = phase_match_spec_from(cfg);
      CHECK(spec.theta_targets == default_theta_targets());
      CHECK(spec.r_values == std::vector<double>{1.0, 0.0});
    }
  }
  CHECK(seen == 8);
}
