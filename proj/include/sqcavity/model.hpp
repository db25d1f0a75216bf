#pragma once

// Physical parameters, squeezed-state algebra, pulse shape and the
// cavity-modified decay helpers. Angular frequencies are rad/ns, times ns.

#include <complex>
#include <numbers>
#include <optional>

namespace sqcavity {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Converters from the "X over 2 pi" convention used for quoting rates.
constexpr double from_ghz_over_2pi(double x) { return kTwoPi * x; }
constexpr double from_mhz_over_2pi(double x) { return kTwoPi * x * 1e-3; }
constexpr double to_ghz_over_2pi(double w) { return w / kTwoPi; }

/// Bogoliubov coefficients of the squeeze operator with epsilon = r e^{2 i phi}:
/// mu = cosh r, nu = e^{2 i phi} sinh r.
struct SqueezeTransform {
  double r = 0.0;
  double phi = 0.0;
  double mu = 1.0;
  cplx nu{0.0, 0.0};

  /// 1 + mu^2 + |nu|^2, the factor by which squeezing enhances the
  /// field's response to the atomic polarization.
  double gain() const { return 1.0 + mu * mu + std::norm(nu); }

  bool operator==(const SqueezeTransform&) const = default;
};

// Throws ConfigError for r < 0 or non-finite inputs.
SqueezeTransform make_squeeze(double r, double phi);

// beta = mu alpha + nu alpha*
cplx alpha_to_beta(cplx alpha, const SqueezeTransform& sq);
// alpha = mu beta - nu beta*; exact inverse of alpha_to_beta.
cplx beta_to_alpha(cplx beta, const SqueezeTransform& sq);

/// Everything a single integration needs. The qubit starts with populations
/// rho00_0, rho11_0 and coherence rho10_0; the pulse is centred at t = 0.
struct SystemParams {
  double g = 0.0;      // atom-cavity coupling
  double Gamma = 0.0;  // atomic amplitude decay (population decays at 2 Gamma)
  double Omega = 0.0;  // Stark-shifted atom-cavity detuning
  double Delta = 0.0;  // qubit splitting; cancels in every reported observable
  double kappa = 0.0;  // cavity-waveguide coupling
  double gamma = 0.0;  // cavity decay
  double sigma = 1.0;  // Gaussian pulse width, ns
  cplx alpha{0.0, 0.0};
  SqueezeTransform squeeze{};
  double rho00_0 = 0.5;
  double rho11_0 = 0.5;
  cplx rho10_0{0.5, 0.0};

  // Throws ConfigError naming the first violated invariant.
  void validate() const;

  bool operator==(const SystemParams&) const = default;
};

struct PulseShape {
  double sigma = 1.0;
  double center = 0.0;
  double kappa = 0.0;
  double gamma = 0.0;
};

PulseShape pulse_of(const SystemParams& p);

// Unit-normalized input envelope: integral of S_in^2 over time is 1.
double pulse_S_in(double t, const PulseShape& p);

/// Cavity-coupled amplitude S(t) = 2 sqrt(kappa) S_in(t) / gamma.
double pulse_S(double t, const PulseShape& p);

// Closed form of the integral of S(t)^2 over all time: 4 kappa / gamma^2.
double pulse_energy(const PulseShape& p);

/// Intensity-weighted amplitude S_bar with S_bar^2 = int S^4 / int S^2,
/// i.e. S(center)^2 / sqrt(2) for the Gaussian. Used as the constant-drive
/// stand-in in the far-detuned approximations.
double pulse_effective_amplitude(const PulseShape& p);

struct DecayModel {
  double tau_r = 1.0;                  // radiative lifetime, ns
  std::optional<double> tau_nr;        // non-radiative lifetime; absent = infinite
  double omega_p = 0.0;                // pulse/cavity offset from the atomic line
};

// P(omega) = tau_r gamma g^2 / (omega^2 + gamma^2 / 4)
double purcell_factor(double omega, const DecayModel& dm, double g, double gamma);

// 2 Gamma = (1 + P) / tau_r + 1 / tau_nr
double total_decay(const DecayModel& dm, double purcell);

// Omega = omega_p [1 + P / (gamma tau_r)]
double stark_detuning(double omega_p, double purcell, double gamma, double tau_r);

/// <Delta N>^2 for the squeezed state whose amplitude has picked up phase theta.
double photon_number_variance(cplx alpha, const SqueezeTransform& sq, double theta);

}  // namespace sqcavity
