#include "sqcavity/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqcavity/errors.hpp"

namespace sqcavity {

namespace {

constexpr double kMaxOverlapExponent = 700.0;

// Composite Simpson on a uniform grid; trapezoid on the last panel when the
// number of intervals is odd.
template <class F>
double integrate_uniform(const std::vector<double>& t, F&& value) {
  const std::size_t n = t.size();
  if (n < 2) return 0.0;
  const double h = (t.back() - t.front()) / static_cast<double>(n - 1);
  const std::size_t even_end = (n - 1) % 2 == 0 ? n - 1 : n - 2;
  double acc = 0.0;
  for (std::size_t i = 0; i + 2 <= even_end; i += 2) {
    acc += h / 3.0 * (value(i) + 4.0 * value(i + 1) + value(i + 2));
  }
  if (even_end != n - 1) acc += 0.5 * h * (value(n - 2) + value(n - 1));
  return acc;
}

}  // namespace

double phase_shift(const Trajectory& traj) {
  const cplx a = traj.final_state().alpha_t;
  if (a == cplx{}) throw NumericalError("phase shift undefined: alpha~(inf) = 0");
  return std::arg(a);
}

double distinguishability(const Trajectory& traj) {
  const cplx a = traj.final_state().alpha_t;
  if (a == cplx{}) return 0.0;
  return std::abs(a) * std::sin(std::arg(a));
}

double coherence_magnitude(const Trajectory& traj) {
  return std::abs(traj.final_state().sigma_10);
}

double overlap_exponent(const Trajectory& traj) {
  const auto& sq = traj.params.squeeze;
  const cplx beta = alpha_to_beta(traj.params.alpha, sq);
  const cplx beta_t = alpha_to_beta(traj.final_state().alpha_t, sq);
  return 0.5 * std::norm(beta - beta_t);
}

double untraced_coherence_magnitude(const Trajectory& traj) {
  const double half = overlap_exponent(traj);
  if (2.0 * half > kMaxOverlapExponent) {
    throw AnsatzBreakdown("|beta - beta~|^2 = " + std::to_string(2.0 * half) +
                          " too large to exponentiate");
  }
  return std::exp(half) * coherence_magnitude(traj);
}

double fidelity(double rho10_mag) { return 0.5 * (1.0 + 2.0 * rho10_mag); }

double photon_loss_quadrature(const Trajectory& traj) {
  const auto& p = traj.params;
  if (p.Gamma == 0.0 || p.rho11_0 == 0.0) return 0.0;
  const double weight = p.squeeze.gain() / (2.0 * p.rho11_0);
  const double integral =
      integrate_uniform(traj.times, [&](std::size_t i) { return traj.states[i].rho_ee; });
  return 2.0 * p.Gamma * weight * integral;
}

double loss_consistency(const Trajectory& traj) {
  const double n0 = std::norm(traj.params.alpha);
  const double observed = n0 - std::norm(traj.final_state().alpha_t);
  const double predicted = photon_loss_quadrature(traj);
  if (predicted > 0.0) return std::abs(observed - predicted) / predicted;
  if (n0 == 0.0) return 0.0;
  return std::abs(observed) / n0;
}

double max_rho_ee(const Trajectory& traj) {
  double m = 0.0;
  for (const auto& s : traj.states) m = std::max(m, s.rho_ee);
  return m;
}

RunReport make_report(const Trajectory& run, const Trajectory& reference) {
  const auto& p = run.params;
  const cplx a_final = run.final_state().alpha_t;
  const double a0 = std::abs(p.alpha);

  RunReport r;
  r.alpha_final = a_final;
  r.theta = a_final == cplx{} ? 0.0 : std::arg(a_final);
  r.loss_fraction = a0 > 0.0 ? std::abs(a0 - std::abs(a_final)) / a0 : 0.0;
  r.d = distinguishability(run);
  r.rho10_mag = coherence_magnitude(run);
  r.F_r = fidelity(r.rho10_mag);
  r.F_i = fidelity(coherence_magnitude(reference));
  r.F = r.F_r / r.F_i;
  r.rho_ee_max = max_rho_ee(run);
  r.loss_consistency_rel = loss_consistency(run);
  r.overlap_exponent = overlap_exponent(run);
  r.g_over_2pi_GHz = to_ghz_over_2pi(p.g);
  return r;
}

RunReport normalized_fidelity(const SystemParams& p, const IntegratorSettings& set) {
  const Trajectory run = integrate(p, set);
  if (p.Gamma == 0.0) return make_report(run, run);
  return make_report(run, reference_run(p, set));
}

}  // namespace sqcavity
