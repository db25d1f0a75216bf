#pragma once

// One-parameter sweeps. Grid values are in the units they are quoted in:
// Gamma/2pi and g/2pi in GHz, log10(sigma / 3 ns) for pulse width.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqcavity/bloch.hpp"
#include "sqcavity/observables.hpp"
#include "sqcavity/records.hpp"

namespace sqcavity {

enum class SweepParameter { Gamma, alpha, g, r_with_g_rescale, sigma };

struct SweepSpec {
  SweepParameter parameter = SweepParameter::Gamma;
  std::vector<double> grid;
  SystemParams base;
  IntegratorSettings settings;

  void validate() const;
};

struct SweepRow {
  double value = 0.0;
  std::optional<RunReport> report;
  std::string error;  // empty on success
};

std::string swept_name(SweepParameter parameter);
SweepParameter parameter_for_figure(int figure);
std::vector<double> default_grid(SweepParameter parameter);

std::vector<double> linear_grid(double from, double to, std::size_t count);
std::vector<double> log_grid(double from, double to, std::size_t count);

// "lin:a:b:n", "log:a:b:n" or an explicit list "v1,v2,...".
std::vector<double> parse_grid(std::string_view text);

/// Parameters at one grid value. For r_with_g_rescale the coupling follows
/// g(r) = g_base (cosh^2 r0 + sinh^2 r0) / (cosh^2 r + sinh^2 r), r0 = base r,
/// which keeps the squeeze-enhanced coupling g (mu^2 + |nu|^2) fixed.
SystemParams apply_sweep_value(SweepParameter parameter, double value, const SystemParams& base);

/// Runs every grid point, each normalized by its own Gamma = 0 reference.
/// References are shared between points that differ only in Gamma. Rows come
/// back in grid order; results do not depend on `threads`.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 1);

// swept_name, swept_value, RunReport fields, error
std::vector<std::string> sweep_columns();
CsvTable sweep_table(const SweepSpec& spec, const std::vector<SweepRow>& rows);

}  // namespace sqcavity
