#include "sqcavity/model.hpp"

#include <cmath>
#include <string>

#include "sqcavity/errors.hpp"

namespace sqcavity {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

constexpr double kProbTol = 1e-12;

}  // namespace

SqueezeTransform make_squeeze(double r, double phi) {
  require(std::isfinite(r) && std::isfinite(phi), "squeeze: r and phi must be finite");
  require(r >= 0.0, "squeeze: r must be >= 0");
  SqueezeTransform sq;
  sq.r = r;
  sq.phi = phi;
  sq.mu = std::cosh(r);
  sq.nu = std::polar(std::sinh(r), 2.0 * phi);
  return sq;
}

cplx alpha_to_beta(cplx alpha, const SqueezeTransform& sq) {
  return sq.mu * alpha + sq.nu * std::conj(alpha);
}

cplx beta_to_alpha(cplx beta, const SqueezeTransform& sq) {
  return sq.mu * beta - sq.nu * std::conj(beta);
}

void SystemParams::validate() const {
  require(std::isfinite(g) && g >= 0.0, "g must be finite and >= 0");
  require(std::isfinite(Gamma) && Gamma >= 0.0, "Gamma must be finite and >= 0");
  require(std::isfinite(Omega), "Omega must be finite");
  require(std::isfinite(Delta), "Delta must be finite");
  require(std::isfinite(kappa) && kappa >= 0.0, "kappa must be finite and >= 0");
  require(std::isfinite(gamma) && gamma > 0.0, "gamma must be finite and > 0");
  require(std::isfinite(sigma) && sigma > 0.0, "sigma must be finite and > 0");
  require(finite(alpha), "alpha must be finite");
  require(std::isfinite(squeeze.r) && squeeze.r >= 0.0, "r must be finite and >= 0");
  require(finite(rho10_0), "rho10_0 must be finite");
  require(rho00_0 >= 0.0 && rho00_0 <= 1.0, "rho00_0 must lie in [0, 1]");
  require(rho11_0 >= 0.0 && rho11_0 <= 1.0, "rho11_0 must lie in [0, 1]");
  require(std::abs(rho00_0 + rho11_0 - 1.0) <= kProbTol, "rho00_0 + rho11_0 must equal 1");
  require(std::norm(rho10_0) <= rho00_0 * rho11_0 + kProbTol,
          "|rho10_0|^2 must not exceed rho00_0 * rho11_0");
}

PulseShape pulse_of(const SystemParams& p) {
  return PulseShape{.sigma = p.sigma, .center = 0.0, .kappa = p.kappa, .gamma = p.gamma};
}

double pulse_S_in(double t, const PulseShape& p) {
  const double x = (t - p.center) / p.sigma;
  const double norm = std::sqrt(std::numbers::sqrt2 / (std::sqrt(std::numbers::pi) * p.sigma));
  return norm * std::exp(-x * x);
}

double pulse_S(double t, const PulseShape& p) {
  return 2.0 * std::sqrt(p.kappa) * pulse_S_in(t, p) / p.gamma;
}

double pulse_energy(const PulseShape& p) { return 4.0 * p.kappa / (p.gamma * p.gamma); }

double pulse_effective_amplitude(const PulseShape& p) {
  // int exp(-4x^2) / int exp(-2x^2) = 1 / sqrt(2)
  return pulse_S(p.center, p) / std::sqrt(std::numbers::sqrt2);
}

double purcell_factor(double omega, const DecayModel& dm, double g, double gamma) {
  require(gamma > 0.0, "purcell_factor: gamma must be > 0");
  return dm.tau_r * gamma * g * g / (omega * omega + gamma * gamma / 4.0);
}

double total_decay(const DecayModel& dm, double purcell) {
  require(dm.tau_r > 0.0, "total_decay: tau_r must be > 0");
  require(!dm.tau_nr || *dm.tau_nr > 0.0, "total_decay: tau_nr must be > 0");
  const double nonradiative = dm.tau_nr ? 1.0 / *dm.tau_nr : 0.0;
  return (1.0 + purcell) / dm.tau_r + nonradiative;
}

double stark_detuning(double omega_p, double purcell, double gamma, double tau_r) {
  require(gamma > 0.0 && tau_r > 0.0, "stark_detuning: gamma and tau_r must be > 0");
  return omega_p * (1.0 + purcell / (gamma * tau_r));
}

double photon_number_variance(cplx alpha, const SqueezeTransform& sq, double theta) {
  const double sh = std::sinh(sq.r);
  const double ch = std::cosh(sq.r);
  const double angle = theta - sq.phi / 2.0;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return 2.0 * sh * sh * ch * ch +
         std::norm(alpha) * (std::exp(-2.0 * sq.r) * c * c + std::exp(2.0 * sq.r) * s * s);
}

}  // namespace sqcavity
