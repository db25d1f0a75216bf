#pragma once

// Semiclassical optical Bloch system for a Lambda-type qubit driven by a
// bright squeezed pulse through a cavity. Besides the optical coherence and
// the field amplitude we carry the rotated qubit coherences
//   Sigma^{e0} = <beta|beta~(t)> e^{i Delta} rho^{e0},
//   Sigma^{10} = <beta|beta~(t)> e^{i Delta} rho^{10},
// which absorb the Delta phase and the light-overlap factor exactly.

#include <array>
#include <cstddef>
#include <vector>

#include "sqcavity/model.hpp"

namespace sqcavity {

struct BlochState {
  double rho_ee = 0.0;
  cplx rho_e1{};
  cplx alpha_t{};  // also the field variable delta~(t)
  cplx sigma_e0{};
  cplx sigma_10{};

  static constexpr std::size_t kRealDim = 9;
  using Packed = std::array<double, kRealDim>;

  Packed pack() const;
  static BlochState unpack(const Packed& y);

  bool operator==(const BlochState&) const = default;
};

struct IntegratorSettings {
  double rtol = 1e-10;
  double atol = 1e-14;
  double window_sigmas = 6.0;  // integrate over [-w sigma, +w sigma]
  std::size_t samples = 2001;

  void validate() const;
  bool operator==(const IntegratorSettings&) const = default;
};

// rho_ee / rho11(0) above this aborts the run.
inline constexpr double kDispersiveGuard = 0.1;

struct IntegrationStats {
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t rhs_evaluations = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<BlochState> states;
  std::vector<double> pulse;  // S(t) at each sample
  SystemParams params;
  IntegratorSettings settings;
  IntegrationStats stats;

  // State at the end of the window, which stands in for t -> infinity.
  const BlochState& final_state() const { return states.back(); }
  const BlochState& initial() const { return states.front(); }
};

/// Right-hand side with the pulse and squeeze constants hoisted out.
class BlochSystem {
 public:
  explicit BlochSystem(const SystemParams& p);

  BlochState derivative(double t, const BlochState& s) const;
  void operator()(double t, const BlochState::Packed& y, BlochState::Packed& dydt) const;

  double drive(double t) const { return pulse_S(t, pulse_); }
  const SystemParams& params() const { return p_; }

 private:
  SystemParams p_;
  PulseShape pulse_;
  double gain_;  // 1 + mu^2 + |nu|^2
};

// Throws DispersiveRegimeViolation when rho_ee / rho11(0) exceeds the guard.
BlochState rhs(double t, const BlochState& s, const SystemParams& p);

BlochState initial_state(const SystemParams& p);

/// Adaptive DOP853 integration over the pulse window; output resampled on a
/// uniform grid whose last point is the window end.
Trajectory integrate(const SystemParams& p, const IntegratorSettings& set = {});

// Identical system with Gamma = 0: the fidelity reference.
Trajectory reference_run(const SystemParams& p, const IntegratorSettings& set = {});

SystemParams without_decay(SystemParams p);

}  // namespace sqcavity
