#include "sqcavity/phase_match.hpp"

#include <cmath>
#include <string>

#include "sqcavity/approx.hpp"
#include "sqcavity/errors.hpp"
#include "sqcavity/parallel.hpp"
#include "sqcavity/sweep.hpp"

namespace sqcavity {

namespace {

double integrated_phase(SystemParams p, double g, const IntegratorSettings& set) {
  p.g = g;
  return phase_shift(integrate(p, set));
}

double approx_phase_at(SystemParams p, double g) {
  p.g = g;
  return approx_phase(p);
}

bool straddles(double a, double b, double target) { return (a - target) * (b - target) <= 0.0; }

// Seed window half-width, relative to the predicted coupling.
constexpr double kSeedWindow = 0.05;

}  // namespace

void PhaseMatchSpec::validate() const {
  if (theta_targets.empty()) throw ConfigError("phase match needs at least one theta target");
  const bool negative = theta_targets.front() < 0.0;
  for (double t : theta_targets) {
    if (t == 0.0 || !std::isfinite(t)) throw ConfigError("theta targets must be finite and non-zero");
    if ((t < 0.0) != negative) throw ConfigError("theta targets must share one sign");
  }
  if (r_values.empty()) throw ConfigError("phase match needs at least one r value");
  for (double r : r_values) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw ConfigError("r values must be finite and >= 0");
  }
  if (!(g_lo >= 0.0 && g_hi > g_lo) || !std::isfinite(g_hi)) {
    throw ConfigError("g bracket must satisfy 0 <= lo < hi");
  }
  if (!(rel_tol > 0.0)) throw ConfigError("rel_tol must be > 0");
  if (max_bisections < 1) throw ConfigError("max_bisections must be >= 1");
  base.validate();
  settings.validate();
}

std::vector<double> default_theta_targets() { return log_grid(-0.002, -0.02, 10); }

PhaseProfile probe_phase_profile(const SystemParams& p, double g_lo, double g_hi,
                                 const IntegratorSettings& set, int probes) {
  PhaseProfile profile;
  profile.g = linear_grid(g_lo, g_hi, static_cast<std::size_t>(probes));
  for (double g : profile.g) profile.theta.push_back(integrated_phase(p, g, set));
  for (std::size_t i = 1; i < profile.theta.size(); ++i) {
    if (!(std::abs(profile.theta[i]) > std::abs(profile.theta[i - 1]))) {
      throw NumericalError("|theta|(g) is not strictly increasing over the bracket near g/2pi = " +
                           std::to_string(to_ghz_over_2pi(profile.g[i])) + " GHz");
    }
  }
  return profile;
}

PhaseMatch match_phase(const SystemParams& p, double theta_target, const PhaseProfile& profile,
                       const IntegratorSettings& set, double rel_tol, int max_bisections) {
  const double g_lo = profile.g.front();
  const double g_hi = profile.g.back();
  if (!straddles(approx_phase_at(p, g_lo), approx_phase_at(p, g_hi), theta_target)) {
    throw NoBracket("theta target " + std::to_string(theta_target) +
                    " not reachable inside the g bracket");
  }

  // Sampled interval holding the target.
  std::size_t k = 0;
  while (k + 1 < profile.g.size() &&
         !straddles(profile.theta[k], profile.theta[k + 1], theta_target)) {
    ++k;
  }
  if (k + 1 == profile.g.size()) {
    throw NoBracket("integrated phase does not reach " + std::to_string(theta_target) +
                    " inside the g bracket");
  }
  double lo = profile.g[k], hi = profile.g[k + 1];
  double th_lo = profile.theta[k], th_hi = profile.theta[k + 1];

  auto converged = [&](double th) {
    return std::abs(th - theta_target) <= rel_tol * std::abs(theta_target);
  };
  if (converged(th_lo)) return {lo, th_lo, 0};
  if (converged(th_hi)) return {hi, th_hi, 0};

  if (auto seed = invert_approx_phase(p, theta_target)) {
    const double a = std::max(lo, *seed * (1.0 - kSeedWindow));
    const double b = std::min(hi, *seed * (1.0 + kSeedWindow));
    if (a < b) {
      const double th_a = integrated_phase(p, a, set);
      if (converged(th_a)) return {a, th_a, 0};
      const double th_b = integrated_phase(p, b, set);
      if (converged(th_b)) return {b, th_b, 0};
      if (straddles(th_a, th_b, theta_target)) {
        lo = a, th_lo = th_a, hi = b, th_hi = th_b;
      } else if (straddles(th_lo, th_a, theta_target)) {
        hi = a, th_hi = th_a;
      } else {
        lo = b, th_lo = th_b;
      }
    }
  }

  for (int it = 1; it <= max_bisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double th = integrated_phase(p, mid, set);
    if (converged(th)) return {mid, th, it};
    if (straddles(th_lo, th, theta_target)) {
      hi = mid, th_hi = th;
    } else {
      lo = mid, th_lo = th;
    }
  }
  throw NonConvergence("bisection did not reach rel_tol after " + std::to_string(max_bisections) +
                       " steps for theta target " + std::to_string(theta_target));
}

std::vector<PhaseMatchRow> run_phase_match(const PhaseMatchSpec& spec, unsigned threads) {
  spec.validate();
  const std::size_t n_r = spec.r_values.size();
  const std::size_t n_t = spec.theta_targets.size();

  std::vector<SystemParams> bases(n_r);
  std::vector<std::optional<PhaseProfile>> profiles(n_r);
  std::vector<std::string> profile_errors(n_r);
  for (std::size_t j = 0; j < n_r; ++j) {
    bases[j] = spec.base;
    bases[j].squeeze = make_squeeze(spec.r_values[j], spec.base.squeeze.phi);
  }
  parallel_for(n_r, threads, [&](std::size_t j) {
    try {
      profiles[j] = probe_phase_profile(bases[j], spec.g_lo, spec.g_hi, spec.settings);
    } catch (const std::exception& e) {
      profile_errors[j] = e.what();
    }
  });

  std::vector<PhaseMatchRow> rows(n_r * n_t);
  parallel_for(rows.size(), threads, [&](std::size_t idx) {
    const std::size_t j = idx / n_t;
    PhaseMatchRow& row = rows[idx];
    row.r = spec.r_values[j];
    row.theta_target = spec.theta_targets[idx % n_t];
    if (!profiles[j]) {
      row.error = profile_errors[j];
      return;
    }
    try {
      row.match = match_phase(bases[j], row.theta_target, *profiles[j], spec.settings,
                              spec.rel_tol, spec.max_bisections);
      SystemParams p = bases[j];
      p.g = row.match->g;
      row.report = normalized_fidelity(p, spec.settings);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return rows;
}

std::vector<std::string> phase_match_columns() {
  return {"theta_target", "r", "g_found_over_2pi_GHz", "theta", "F", "F_r", "F_i",
          "bisections", "error"};
}

CsvTable phase_match_table(const std::vector<PhaseMatchRow>& rows) {
  CsvTable table{phase_match_columns(), {}};
  for (const auto& row : rows) {
    std::vector<std::string> cells = {format_number(row.theta_target), format_number(row.r)};
    if (row.match && row.report) {
      cells.push_back(format_number(to_ghz_over_2pi(row.match->g)));
      cells.push_back(format_number(row.match->theta));
      cells.push_back(format_number(row.report->F));
      cells.push_back(format_number(row.report->F_r));
      cells.push_back(format_number(row.report->F_i));
      cells.push_back(std::to_string(row.match->bisections));
    } else {
      cells.insert(cells.end(), 6, "nan");
    }
    cells.push_back(row.error);
    table.rows.push_back(std::move(cells));
  }
  return table;
}

}  // namespace sqcavity
