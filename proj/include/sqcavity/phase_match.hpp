#pragma once

// Finds, for each squeeze factor, the coupling g that produces a requested
// pulse phase shift, and reports the qubit fidelity obtained there. This is
// how squeezed and coherent pulses are compared at equal signal.

#include <optional>
#include <string>
#include <vector>

#include "sqcavity/bloch.hpp"
#include "sqcavity/observables.hpp"
#include "sqcavity/records.hpp"

namespace sqcavity {

struct PhaseMatchSpec {
  std::vector<double> theta_targets;  // rad, non-zero, one sign
  std::vector<double> r_values{1.0, 0.0};
  SystemParams base;
  IntegratorSettings settings;
  double g_lo = from_ghz_over_2pi(0.005);  // rad/ns
  double g_hi = from_ghz_over_2pi(0.35);
  double rel_tol = 1e-4;
  int max_bisections = 100;

  void validate() const;
};

// Default comparison targets: 10 log-spaced from -0.002 to -0.02 rad.
std::vector<double> default_theta_targets();

inline constexpr int kMonotoneProbes = 8;

/// Phase shift sampled at evenly spaced couplings across [g_lo, g_hi]; used
/// both to confirm |theta|(g) is strictly increasing and to bracket roots.
struct PhaseProfile {
  std::vector<double> g;
  std::vector<double> theta;
};

// Throws NumericalError if |theta| is not strictly increasing across the probes.
PhaseProfile probe_phase_profile(const SystemParams& p, double g_lo, double g_hi,
                                 const IntegratorSettings& set, int probes = kMonotoneProbes);

struct PhaseMatch {
  double g = 0.0;
  double theta = 0.0;
  int bisections = 0;
};

/// Bracketed bisection on the integrated phase shift. The bracket is narrowed
/// around the coupling predicted by the far-detuned formula when that
/// prediction straddles the target. Throws NoBracket / NonConvergence.
PhaseMatch match_phase(const SystemParams& p, double theta_target, const PhaseProfile& profile,
                       const IntegratorSettings& set, double rel_tol, int max_bisections = 100);

struct PhaseMatchRow {
  double theta_target = 0.0;
  double r = 0.0;
  std::optional<PhaseMatch> match;
  std::optional<RunReport> report;
  std::string error;
};

// Rows ordered by r_values, then theta_targets.
std::vector<PhaseMatchRow> run_phase_match(const PhaseMatchSpec& spec, unsigned threads = 1);

// theta_target, r, g_found_over_2pi_GHz, theta, F, F_r, F_i, bisections, error
std::vector<std::string> phase_match_columns();
CsvTable phase_match_table(const std::vector<PhaseMatchRow>& rows);

}  // namespace sqcavity
