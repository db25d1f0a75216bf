#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sqcavity/approx.hpp"
#include "sqcavity/bloch.hpp"
#include "sqcavity/errors.hpp"
#include "sqcavity/observables.hpp"
#include "sqcavity/presets.hpp"
#include "sqcavity/sweep.hpp"

using namespace sqcavity;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double peak_S(const SystemParams& p) { return pulse_S(0.0, pulse_of(p)); }

}  // namespace

TEST_SUITE("steady state") {
  TEST_CASE("vanishes without coupling or field") {
    auto p = presets::squeezed_baseline();
    p.g = 0.0;
    CHECK(steady_rho_ee(p, peak_S(p)) == 0.0);
    CHECK(steady_rho_e1(p, peak_S(p)) == cplx{});
    p = presets::squeezed_baseline();
    p.alpha = 0.0;
    CHECK(steady_rho_ee(p, peak_S(p)) == 0.0);
  }

  TEST_CASE("closed form") {
    const auto p = presets::squeezed_baseline();
    const double S = peak_S(p);
    const double s_bar2 = S * S / std::sqrt(2.0);
    const double D = p.Gamma * p.Gamma + p.Omega * p.Omega + 2.0 * p.g * p.g * s_bar2 * 1e4;
    CHECK(saturation_denominator(p) == doctest::Approx(D).epsilon(1e-14));
    CHECK(steady_rho_ee(p, S) == doctest::Approx(0.5 * p.g * p.g * S * S * 1e4 / D).epsilon(1e-14));
  }

  TEST_CASE("lossless limit gives a real response") {
    auto p = presets::squeezed_baseline();
    p.Gamma = 0.0;
    const double S = 0.7 * peak_S(p);
    const cplx ratio = steady_rho_e1(p, S) / (p.g * S * p.alpha);
    CHECK(ratio.imag() == 0.0);
    CHECK(ratio.real() > 0.0);
  }

  TEST_CASE("peak population and mid-pulse coherence track the integrator") {
    const auto p = presets::squeezed_baseline();
    const auto traj = integrate(p);
    const double S = peak_S(p);
    CHECK(rel(steady_rho_ee(p, S), max_rho_ee(traj)) < 0.3);
    const auto mid = traj.states[traj.states.size() / 2];
    REQUIRE(traj.times[traj.states.size() / 2] == doctest::Approx(0.0));
    CHECK(rel(std::abs(steady_rho_e1(p, S)), std::abs(mid.rho_e1)) < 0.3);
  }

  TEST_CASE("rejects a vanishing denominator") {
    auto p = presets::coherent_baseline();
    p.Gamma = 0.0;
    p.Omega = 0.0;
    p.g = 0.0;
    CHECK_THROWS_AS(saturation_denominator(p), ConfigError);
    CHECK_THROWS_AS(approx_phase(p), ConfigError);
  }
}

TEST_SUITE("phase") {
  TEST_CASE("coherent baseline hand value") {
    const auto p = presets::coherent_baseline();
    const double hand = -p.g * p.g * 4.0 / (p.gamma * p.Omega);
    CHECK(hand == doctest::Approx(-5.78e-3).epsilon(1e-3));
    CHECK(rel(approx_phase(p), hand) < 0.01);
  }

  TEST_CASE("squeeze gain ratio in the weak-field limit") {
    auto p = presets::coherent_baseline();
    p.alpha = 1e-6;
    p.g = from_ghz_over_2pi(0.017);
    const double coherent = approx_phase(p);
    p.squeeze = make_squeeze(1.0, presets::kDefaultSqueezePhase);
    const double squeezed = approx_phase(p);
    const double c = oracle::cosh_r(1.0), s = oracle::sinh_r(1.0);
    CHECK(std::abs(squeezed / coherent - (1.0 + c * c + s * s) / 2.0) < 1e-6);
  }

  TEST_CASE("inverse scaling with detuning") {
    auto p = presets::squeezed_baseline();
    const double a = approx_phase(p);
    p.Omega *= 2.0;
    CHECK(rel(approx_phase(p), a / 2.0) < 0.05);
  }

  TEST_CASE("negative for positive detuning") {
    for (double r : {0.0, 0.5, 1.0, 2.0}) {
      auto p = presets::squeezed_baseline();
      p.squeeze = make_squeeze(r, presets::kDefaultSqueezePhase);
      CHECK(approx_phase(p) < 0.0);
    }
  }

  TEST_CASE("magnitude grows with the squeeze gain") {
    auto p = presets::coherent_baseline();
    p.alpha = 1e-6;
    double last = 0.0;
    for (double r = 0.0; r <= 2.0; r += 0.1) {
      p.squeeze = make_squeeze(r, presets::kDefaultSqueezePhase);
      const double th = std::abs(approx_phase(p));
      REQUIRE(th > last);
      last = th;
    }
  }

  TEST_CASE("linearized field ends at the phase estimate") {
    const auto p = presets::squeezed_baseline();
    CHECK(std::abs(approx_alpha(p, -1e3) - p.alpha) < 1e-12);
    CHECK(std::arg(approx_alpha(p, 1e3)) == doctest::Approx(approx_phase(p)).epsilon(1e-12));
  }

  TEST_CASE("agrees with the integrator across the decay grid") {
    for (double G : log_grid(1e-3, 0.1, 9)) {
      auto p = presets::squeezed_baseline();
      p.Gamma = from_ghz_over_2pi(G);
      CAPTURE(G);
      CHECK(rel(approx_phase(p), phase_shift(integrate(p))) < 0.02);
    }
  }

  TEST_CASE("agrees with the integrator across couplings") {
    for (double g : linear_grid(0.05, 0.25, 9)) {
      auto p = presets::squeezed_baseline();
      p.g = from_ghz_over_2pi(g);
      CAPTURE(g);
      CHECK(rel(approx_phase(p), phase_shift(integrate(p))) < 0.05);
    }
  }

  TEST_CASE("inversion round trip") {
    auto p = presets::squeezed_baseline();
    p.Gamma = from_mhz_over_2pi(10.0);
    for (double g : {0.01, 0.1, 0.2, 0.3}) {
      p.g = from_ghz_over_2pi(g);
      const double th = approx_phase(p);
      const auto back = invert_approx_phase(p, th);
      REQUIRE(back);
      CHECK(*back == doctest::Approx(p.g).epsilon(1e-10));
    }
    CHECK(invert_approx_phase(p, 0.0) == 0.0);
    CHECK_FALSE(invert_approx_phase(p, +0.01));  // wrong sign for Omega > 0
    CHECK_FALSE(invert_approx_phase(p, -1.0));   // beyond saturation
  }
}

TEST_SUITE("sigma channel") {
  TEST_CASE("no coupling means no damping") {
    auto p = presets::coherent_baseline();
    p.g = 0.0;
    const auto s = approx_sigma_channel(p);
    CHECK(s.sigma10_damping == cplx{1.0, 0.0});
    CHECK(s.sigma_e0_scale == cplx{});
  }

  TEST_CASE("lossless channel only rotates") {
    for (auto p : {presets::coherent_baseline(), presets::squeezed_baseline()}) {
      p.Gamma = 0.0;
      CHECK(std::abs(std::abs(approx_sigma_channel(p).sigma10_damping) - 1.0) < 1e-6);
    }
  }

  TEST_CASE("raw fidelity of the coherent baseline") {
    const auto p = presets::coherent_baseline();
    const double damp = std::abs(approx_sigma_channel(p).sigma10_damping);
    const double F_r = fidelity(std::abs(p.rho10_0) * damp);
    CHECK(std::abs(F_r - 0.99999724) < 1e-6);
    const auto traj = integrate(p);
    CHECK(std::abs(F_r - fidelity(coherence_magnitude(traj))) < 1e-6);
  }

  TEST_CASE("excited coherence follows adiabatically") {
    const auto p = presets::coherent_baseline();
    const auto s = approx_sigma_channel(p);
    const cplx expect = cplx{0.0, 1.0} * p.g * approx_alpha(p, 0.0) * peak_S(p) / cplx{-p.Gamma, p.Omega};
    CHECK(std::abs(s.sigma_e0_scale - expect) < 1e-14 * std::abs(expect));
  }

  TEST_CASE("damping never amplifies") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> G(0.0, 0.5), g(0.0, 0.4), a(0.0, 300.0), r(0.0, 2.0);
    for (int i = 0; i < 500; ++i) {
      auto p = presets::cavity_defaults();
      p.Gamma = from_ghz_over_2pi(G(rng));
      p.g = from_ghz_over_2pi(g(rng));
      p.alpha = a(rng);
      p.squeeze = make_squeeze(r(rng), presets::kDefaultSqueezePhase);
      REQUIRE(std::abs(approx_sigma_channel(p).sigma10_damping) <= 1.0);
    }
  }

  TEST_CASE("rejects zero detuning and decay") {
    auto p = presets::coherent_baseline();
    p.Gamma = 0.0;
    p.Omega = 0.0;
    CHECK_THROWS_AS(approx_sigma_channel(p), ConfigError);
  }
}

TEST_CASE("report") {
  const auto p = presets::squeezed_baseline();
  const auto r = approx_report(p);
  CHECK(r.rho_ee_peak >= 0.0);
  CHECK(r.theta_approx == approx_phase(p));
  CHECK(r.sigma10_damping > 0.0);
  CHECK(r.sigma10_damping <= 1.0);
  CHECK(r.loss_approx > 1.3e-7 / 2.0);
  CHECK(r.loss_approx < 1.3e-7 * 2.0);
}
