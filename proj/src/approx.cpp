#include "sqcavity/approx.hpp"

#include <cmath>
#include <numbers>

#include "sqcavity/errors.hpp"

namespace sqcavity {

namespace {

constexpr cplx kI{0.0, 1.0};

// Fraction of the pulse energy delivered before t (Gaussian |S|^2 has width sigma/2).
double energy_fraction(const PulseShape& pulse, double t) {
  return 0.5 * (1.0 + std::erf(std::numbers::sqrt2 * (t - pulse.center) / pulse.sigma));
}

// c = g^2 (Omega - i Gamma) K / (2 D)
cplx phase_rate(const SystemParams& p) {
  const double D = saturation_denominator(p);
  return p.g * p.g * cplx{p.Omega, -p.Gamma} * p.squeeze.gain() / (2.0 * D);
}

}  // namespace

double saturation_denominator(const SystemParams& p) {
  const double s_bar = pulse_effective_amplitude(pulse_of(p));
  const double D = p.Gamma * p.Gamma + p.Omega * p.Omega +
                   2.0 * p.g * p.g * s_bar * s_bar * std::norm(p.alpha);
  if (!(D > 0.0)) throw ConfigError("far-detuned approximation needs Gamma or Omega non-zero");
  return D;
}

double steady_rho_ee(const SystemParams& p, double S) {
  return p.rho11_0 * p.g * p.g * S * S * std::norm(p.alpha) / saturation_denominator(p);
}

cplx steady_rho_e1(const SystemParams& p, double S) {
  return p.rho11_0 * p.g * S * p.alpha * cplx{p.Omega, -p.Gamma} / saturation_denominator(p);
}

cplx approx_alpha(const SystemParams& p, double t) {
  const PulseShape pulse = pulse_of(p);
  const double F = pulse_energy(pulse) * energy_fraction(pulse, t);
  return p.alpha * (1.0 - kI * phase_rate(p) * F);
}

double approx_phase(const SystemParams& p) {
  const double E = pulse_energy(pulse_of(p));
  const cplx bracket = 1.0 - kI * phase_rate(p) * E;
  return std::arg(bracket);
}

std::optional<double> invert_approx_phase(const SystemParams& p, double theta_target) {
  if (theta_target == 0.0) return 0.0;
  // arg(1 - X Gamma - i X Omega) = theta  =>  X = tan(-theta) / (Omega + tan(-theta) Gamma)
  const double t = std::tan(-theta_target);
  const double X = t / (p.Omega + t * p.Gamma);
  if (!(X > 0.0) || !std::isfinite(X)) return std::nullopt;
  const PulseShape pulse = pulse_of(p);
  const double E = pulse_energy(pulse);
  const double s_bar = pulse_effective_amplitude(pulse);
  const double K = p.squeeze.gain();
  const double denom = E * K / 2.0 - 2.0 * X * s_bar * s_bar * std::norm(p.alpha);
  if (!(denom > 0.0)) return std::nullopt;
  const double g2 = X * (p.Gamma * p.Gamma + p.Omega * p.Omega) / denom;
  return std::sqrt(g2);
}

SigmaChannelApprox approx_sigma_channel(const SystemParams& p) {
  if (p.Gamma == 0.0 && p.Omega == 0.0) {
    throw ConfigError("sigma-channel approximation needs Gamma or Omega non-zero");
  }
  const PulseShape pulse = pulse_of(p);
  const double S_peak = pulse_S(pulse.center, pulse);
  const cplx decay_rot{-p.Gamma, p.Omega};  // i Omega - Gamma

  SigmaChannelApprox out;
  // Adiabatic Sigma^{e0} following Sigma^{10}.
  out.sigma_e0_scale = kI * p.g * approx_alpha(p, pulse.center) * S_peak / decay_rot;

  // Integral of S^2 |alpha~|^2 with the linearized alpha~: substituting dF = S^2 dt,
  // |1 - i c F|^2 = (1 + Im(c) F)^2 + Re(c)^2 F^2 integrates in closed form.
  const cplx c = phase_rate(p);
  const double E = pulse_energy(pulse);
  const double weighted = std::norm(p.alpha) *
                          (E + c.imag() * E * E + std::norm(c) * E * E * E / 3.0);
  const cplx exponent = -p.g * p.g * weighted / cplx{p.Gamma, -p.Omega};
  out.sigma10_damping = std::exp(exponent);
  return out;
}

ApproxReport approx_report(const SystemParams& p) {
  const PulseShape pulse = pulse_of(p);
  const double D = saturation_denominator(p);
  ApproxReport r;
  r.rho_ee_peak = steady_rho_ee(p, pulse_S(pulse.center, pulse));
  r.theta_approx = approx_phase(p);
  // Photon loss through atomic decay with the steady-state rho_ee.
  r.loss_approx = p.Gamma * p.g * p.g * pulse_energy(pulse) * p.squeeze.gain() / (2.0 * D);
  r.sigma10_damping = std::abs(approx_sigma_channel(p).sigma10_damping);
  return r;
}

}  // namespace sqcavity
