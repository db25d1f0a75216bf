#pragma once

// Builds sweep and phase-match specs from a run config. The optional
// sections look like
//   "sweep":       {"grid": "log:1e-3:1:25"}            (or an array of values)
//   "phase_match": {"theta_targets": [...], "r_values": [1, 0],
//                   "g_lo_over_2pi_GHz": 0.005, "g_hi_over_2pi_GHz": 0.35,
//                   "rel_tol": 1e-4}
// Every key is optional; missing ones fall back to the defaults.

#include <optional>
#include <string>

#include "sqcavity/config.hpp"
#include "sqcavity/phase_match.hpp"
#include "sqcavity/sweep.hpp"

namespace sqcavity {

// grid_override, when given, wins over the config's "sweep.grid".
SweepSpec sweep_spec_from(const RunConfig& cfg, int figure,
                          const std::optional<std::string>& grid_override = std::nullopt);

PhaseMatchSpec phase_match_spec_from(const RunConfig& cfg);

}  // namespace sqcavity
