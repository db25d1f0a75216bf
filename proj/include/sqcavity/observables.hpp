#pragma once

#include "sqcavity/bloch.hpp"

namespace sqcavity {

/// Everything reported for one run. F_r comes from the run itself, F_i from
/// its Gamma = 0 twin, F = F_r / F_i. Raw values are kept so that the
/// slight F_i > 1 excess of the semiclassical model stays visible.
struct RunReport {
  double theta = 0.0;
  cplx alpha_final{};
  double loss_fraction = 0.0;
  double d = 0.0;
  double rho10_mag = 0.0;
  double F_r = 0.0;
  double F_i = 0.0;
  double F = 0.0;
  double rho_ee_max = 0.0;
  double loss_consistency_rel = 0.0;
  // diagnostics
  double overlap_exponent = 0.0;  // |beta - beta~(inf)|^2 / 2
  double g_over_2pi_GHz = 0.0;

  bool operator==(const RunReport&) const = default;
};

// arg alpha~(inf) on (-pi, pi]. Throws NumericalError if alpha~(inf) = 0.
double phase_shift(const Trajectory& traj);

// |alpha~(inf)| sin(theta)
double distinguishability(const Trajectory& traj);

/// Magnitude of the qubit coherence left after the pulse, |Sigma^{10}(inf)|.
/// Tracing out the light multiplies rho^{10} by <beta|beta~>, which is
/// exactly the factor Sigma^{10} carries.
double coherence_magnitude(const Trajectory& traj);

// |beta - beta~(inf)|^2 / 2 with beta~ = mu alpha~ + nu alpha~*.
double overlap_exponent(const Trajectory& traj);

/// Coefficient of |beta~><beta| (1><0| before tracing out the light:
/// e^{|beta - beta~|^2 / 2} |Sigma^{10}|. Throws AnsatzBreakdown when
/// |beta - beta~|^2 > 700.
double untraced_coherence_magnitude(const Trajectory& traj);

// F = (1 + 2 |rho10|) / 2
double fidelity(double rho10_mag);

// 2 Gamma * integral of rho_ee K / (2 rho11(0)) dt over the samples (Simpson).
double photon_loss_quadrature(const Trajectory& traj);

/// Relative mismatch between the photon-number loss |alpha|^2 - |alpha~(inf)|^2
/// read off the trajectory and the decay quadrature. Falls back to
/// normalizing by |alpha|^2 when the quadrature vanishes (Gamma = 0).
double loss_consistency(const Trajectory& traj);

double max_rho_ee(const Trajectory& traj);

RunReport make_report(const Trajectory& run, const Trajectory& reference);

// Integrates the run and its Gamma = 0 reference and assembles the report.
RunReport normalized_fidelity(const SystemParams& p, const IntegratorSettings& set = {});

}  // namespace sqcavity
