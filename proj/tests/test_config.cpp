#include <doctest.h>

#include <fstream>

#include "oracles.hpp"
#include "sqcavity/config.hpp"
#include "sqcavity/errors.hpp"
#include "sqcavity/experiment.hpp"
#include "sqcavity/presets.hpp"

using namespace sqcavity;
using nlohmann::json;

namespace {

json fig2() {
  return json{{"alpha", 100},
              {"r", 1},
              {"g_over_2pi_GHz", 0.17},
              {"Gamma_over_2pi_MHz", 1},
              {"kappa_over_2pi_GHz", 0.2},
              {"gamma_over_2pi_GHz", 0.2},
              {"Omega_over_2pi_GHz", 100},
              {"sigma_ns", 3}};
}

void check_close(const SystemParams& a, const SystemParams& b) {
  CHECK(a.g == doctest::Approx(b.g).epsilon(1e-14));
  CHECK(a.Gamma == doctest::Approx(b.Gamma).epsilon(1e-14));
  CHECK(a.Omega == doctest::Approx(b.Omega).epsilon(1e-14));
  CHECK(a.kappa == doctest::Approx(b.kappa).epsilon(1e-14));
  CHECK(a.gamma == doctest::Approx(b.gamma).epsilon(1e-14));
  CHECK(a.sigma == b.sigma);
  CHECK(a.alpha == b.alpha);
  CHECK(a.squeeze.r == b.squeeze.r);
  CHECK(a.squeeze.phi == b.squeeze.phi);
  CHECK(a.rho11_0 == b.rho11_0);
  CHECK(a.rho10_0 == b.rho10_0);
}

}  // namespace

TEST_CASE("minimal config reproduces the squeezed baseline") {
  const auto cfg = parse_config(fig2());
  check_close(cfg.params, presets::squeezed_baseline());
  CHECK(cfg.params.Delta == 0.0);
  CHECK(cfg.settings == IntegratorSettings{});
  CHECK(cfg.sweep.empty());
  CHECK(cfg.phase_match.empty());
}

TEST_CASE("GHz and MHz spellings are equivalent") {
  auto doc = fig2();
  doc.erase("Gamma_over_2pi_MHz");
  doc["Gamma_over_2pi_GHz"] = 1e-3;
  doc.erase("g_over_2pi_GHz");
  doc["g_over_2pi_MHz"] = 170;
  check_close(parse_config(doc).params, presets::squeezed_baseline());
}

TEST_CASE("optional fields") {
  auto doc = fig2();
  doc["phi"] = 0.25;
  doc["Delta_over_2pi_GHz"] = 3;
  doc["rho11_0"] = 0.8;
  doc["rho10_0"] = json::array({0.1, -0.2});
  doc["rtol"] = 1e-9;
  doc["atol"] = 1e-13;
  doc["window_sigmas"] = 7;
  doc["samples"] = 11;
  doc["alpha"] = json::array({3, 4});
  doc["description"] = "anything";
  const auto cfg = parse_config(doc);
  CHECK(cfg.params.squeeze.phi == 0.25);
  CHECK(cfg.params.Delta == doctest::Approx(kTwoPi * 3));
  CHECK(cfg.params.rho11_0 == 0.8);
  CHECK(cfg.params.rho00_0 == doctest::Approx(0.2));
  CHECK(cfg.params.rho10_0 == cplx{0.1, -0.2});
  CHECK(cfg.params.alpha == cplx{3, 4});
  CHECK(cfg.settings.rtol == 1e-9);
  CHECK(cfg.settings.atol == 1e-13);
  CHECK(cfg.settings.window_sigmas == 7);
  CHECK(cfg.settings.samples == 11);
}

TEST_CASE("errors name the offending field") {
  auto expect = [](json doc, const char* field) {
    CAPTURE(field);
    CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains(field), ConfigError);
  };
  auto doc = fig2();
  doc.erase("alpha");
  expect(doc, "alpha");
  doc = fig2();
  doc.erase("Omega_over_2pi_GHz");
  expect(doc, "Omega_over_2pi");
  doc = fig2();
  doc["r"] = "one";
  expect(doc, "'r'");
  doc = fig2();
  doc["r"] = -1;
  expect(doc, "'r'");
  doc = fig2();
  doc["colour"] = 1;
  expect(doc, "colour");
  doc = fig2();
  doc["Gamma_over_2pi_GHz"] = 0.001;
  expect(doc, "Gamma_over_2pi_GHz");
  doc = fig2();
  doc["samples"] = 1.5;
  expect(doc, "samples");
  doc = fig2();
  doc["rho10_0"] = json::array({1});
  expect(doc, "rho10_0");
  doc = fig2();
  doc["sweep"] = 3;
  expect(doc, "sweep");
  doc = fig2();
  doc["sigma_ns"] = -3;
  expect(doc, "sigma");
  CHECK_THROWS_AS(parse_config(json::array()), ConfigError);
}

TEST_CASE("json round trip") {
  auto doc = fig2();
  doc["rho10_0"] = json::array({0.3, 0.1});
  doc["samples"] = 501;
  const auto cfg = parse_config(doc);
  const auto again = parse_config(json(config_to_json(cfg)));
  check_close(again.params, cfg.params);
  CHECK(again.settings == cfg.settings);
}

TEST_CASE("file loading") {
  const auto dir = oracle::scratch_dir("config");
  CHECK_THROWS_AS(load_config(dir / "missing.json"), IoError);
  {
    std::ofstream(dir / "broken.json") << "{ not json";
  }
  CHECK_THROWS_WITH_AS(load_config(dir / "broken.json"), doctest::Contains("broken.json"), ConfigError);
  {
    std::ofstream(dir / "ok.json") << fig2().dump();
  }
  check_close(load_config(dir / "ok.json").params, presets::squeezed_baseline());
}

TEST_SUITE("experiment sections") {
  TEST_CASE("sweep grid precedence") {
    auto doc = fig2();
    auto cfg = parse_config(doc);
    CHECK(sweep_spec_from(cfg, 3).grid == default_grid(SweepParameter::Gamma));
    doc["sweep"] = {{"grid", "lin:0.001:0.002:2"}};
    cfg = parse_config(doc);
    CHECK(sweep_spec_from(cfg, 3).grid == std::vector<double>{0.001, 0.002});
    CHECK(sweep_spec_from(cfg, 3, "0.5,0.6").grid == std::vector<double>{0.5, 0.6});
    doc["sweep"] = {{"grid", {10, 20, 30}}};
    cfg = parse_config(doc);
    const auto spec = sweep_spec_from(cfg, 4);
    CHECK(spec.parameter == SweepParameter::alpha);
    CHECK(spec.grid == std::vector<double>{10, 20, 30});
  }

  TEST_CASE("sweep section errors") {
    auto doc = fig2();
    doc["sweep"] = {{"points", 3}};
    CHECK_THROWS_WITH_AS(sweep_spec_from(parse_config(doc), 3), doctest::Contains("sweep.points"), ConfigError);
    doc["sweep"] = {{"grid", {3, 2, 2}}};
    CHECK_THROWS_AS(sweep_spec_from(parse_config(doc), 4), ConfigError);
    CHECK_THROWS_AS(sweep_spec_from(parse_config(fig2()), 9), ConfigError);
    CHECK_THROWS_AS(sweep_spec_from(parse_config(fig2()), 5, "lin:1:2"), ConfigError);
  }

  TEST_CASE("phase-match section") {
    auto doc = fig2();
    auto spec = phase_match_spec_from(parse_config(doc));
    CHECK(spec.theta_targets.size() == 10);
    CHECK(spec.r_values == std::vector<double>{1.0, 0.0});
    CHECK(spec.rel_tol == 1e-4);
    doc["phase_match"] = {{"theta_targets", {-0.01}},
                          {"r_values", {0.5}},
                          {"g_lo_over_2pi_GHz", 0.01},
                          {"g_hi_over_2pi_GHz", 0.2},
                          {"rel_tol", 1e-5}};
    spec = phase_match_spec_from(parse_config(doc));
    CHECK(spec.theta_targets == std::vector<double>{-0.01});
    CHECK(spec.r_values == std::vector<double>{0.5});
    CHECK(spec.g_lo == doctest::Approx(kTwoPi * 0.01));
    CHECK(spec.g_hi == doctest::Approx(kTwoPi * 0.2));
    CHECK(spec.rel_tol == 1e-5);
    doc["phase_match"] = {{"theta_targets", {-0.01, 0.01}}};
    CHECK_THROWS_AS(phase_match_spec_from(parse_config(doc)), ConfigError);
    doc["phase_match"] = {{"g_lo_over_2pi_GHz", 0.3}, {"g_hi_over_2pi_GHz", 0.2}};
    CHECK_THROWS_AS(phase_match_spec_from(parse_config(doc)), ConfigError);
    doc["phase_match"] = {{"bracket", 1}};
    CHECK_THROWS_WITH_AS(phase_match_spec_from(parse_config(doc)), doctest::Contains("phase_match.bracket"), ConfigError);
  }
}
