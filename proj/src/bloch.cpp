#include "sqcavity/bloch.hpp"

#include <cmath>
#include <string>

#include "sqcavity/dop853.hpp"
#include "sqcavity/errors.hpp"

namespace sqcavity {

namespace {

constexpr cplx kI{0.0, 1.0};

std::vector<double> uniform_grid(double t0, double t1, std::size_t n) {
  std::vector<double> grid(n);
  const double dt = (t1 - t0) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) grid[i] = t0 + dt * static_cast<double>(i);
  grid.back() = t1;
  return grid;
}

}  // namespace

BlochState::Packed BlochState::pack() const {
  return {rho_ee,          rho_e1.real(),   rho_e1.imag(),   alpha_t.real(), alpha_t.imag(),
          sigma_e0.real(), sigma_e0.imag(), sigma_10.real(), sigma_10.imag()};
}

BlochState BlochState::unpack(const Packed& y) {
  return BlochState{.rho_ee = y[0],
                    .rho_e1 = {y[1], y[2]},
                    .alpha_t = {y[3], y[4]},
                    .sigma_e0 = {y[5], y[6]},
                    .sigma_10 = {y[7], y[8]}};
}

void IntegratorSettings::validate() const {
  if (!(rtol > 0.0) || !(atol > 0.0)) throw ConfigError("rtol and atol must be > 0");
  if (!(window_sigmas > 0.0) || !std::isfinite(window_sigmas))
    throw ConfigError("window_sigmas must be finite and > 0");
  if (samples < 2) throw ConfigError("samples must be >= 2");
}

BlochSystem::BlochSystem(const SystemParams& p)
    : p_(p), pulse_(pulse_of(p)), gain_(p.squeeze.gain()) {}

BlochState BlochSystem::derivative(double t, const BlochState& s) const {
  const double rho11 = p_.rho11_0;
  if (rho11 > 0.0 && s.rho_ee > kDispersiveGuard * rho11) {
    throw DispersiveRegimeViolation("rho_ee / rho11(0) = " + std::to_string(s.rho_ee / rho11) +
                                    " exceeds the dispersive guard at t = " + std::to_string(t) +
                                    " ns");
  }
  const double S = drive(t);  // real envelope, so S* = S
  const double g = p_.g;
  const cplx decay_rot{-p_.Gamma, p_.Omega};  // i Omega - Gamma

  BlochState d;
  const cplx z = S * std::conj(s.alpha_t) * s.rho_e1;
  d.rho_ee = -2.0 * g * z.imag() - 2.0 * p_.Gamma * s.rho_ee;
  d.rho_e1 = kI * g * S * s.alpha_t * (2.0 * s.rho_ee - rho11) + decay_rot * s.rho_e1;
  d.alpha_t = rho11 > 0.0 ? -kI * g * S * s.rho_e1 * gain_ / (2.0 * (rho11 - s.rho_ee)) : cplx{};
  d.sigma_e0 = -kI * g * s.alpha_t * S * s.sigma_10 + decay_rot * s.sigma_e0;
  d.sigma_10 = -kI * g * S * std::conj(s.alpha_t) * s.sigma_e0;
  return d;
}

void BlochSystem::operator()(double t, const BlochState::Packed& y,
                             BlochState::Packed& dydt) const {
  dydt = derivative(t, BlochState::unpack(y)).pack();
}

BlochState rhs(double t, const BlochState& s, const SystemParams& p) {
  return BlochSystem(p).derivative(t, s);
}

BlochState initial_state(const SystemParams& p) {
  // beta~ = beta at the start, so <beta|beta~> = 1 and Sigma^{10} = rho^{10}(0).
  return BlochState{.rho_ee = 0.0,
                    .rho_e1 = {},
                    .alpha_t = p.alpha,
                    .sigma_e0 = {},
                    .sigma_10 = p.rho10_0};
}

Trajectory integrate(const SystemParams& p, const IntegratorSettings& set) {
  p.validate();
  set.validate();

  const BlochSystem system(p);
  const double t0 = -set.window_sigmas * p.sigma;
  const double t1 = set.window_sigmas * p.sigma;

  Trajectory traj;
  traj.params = p;
  traj.settings = set;
  traj.times = uniform_grid(t0, t1, set.samples);
  traj.states.resize(set.samples);
  traj.pulse.resize(set.samples);

  Dop853<BlochState::kRealDim> solver(Dop853Options{.rtol = set.rtol, .atol = set.atol});
  const auto y_end = solver.integrate(
      system, t0, t1, initial_state(p).pack(), traj.times,
      [&](std::size_t i, double t, const BlochState::Packed& y) {
        traj.states[i] = BlochState::unpack(y);
        traj.pulse[i] = system.drive(t);
      });
  traj.states.back() = BlochState::unpack(y_end);

  const auto& st = solver.stats();
  traj.stats = {st.accepted, st.rejected, st.evaluations};
  return traj;
}

SystemParams without_decay(SystemParams p) {
  p.Gamma = 0.0;
  return p;
}

Trajectory reference_run(const SystemParams& p, const IntegratorSettings& set) {
  return integrate(without_decay(p), set);
}

}  // namespace sqcavity
