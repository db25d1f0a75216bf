#pragma once

// Parameter sets used throughout the examples, configs and tests.

#include <numbers>

#include "sqcavity/model.hpp"

namespace sqcavity::presets {

inline constexpr double kDefaultSqueezePhase = std::numbers::pi / 2.0;  // epsilon = r e^{i pi}

// Shared cavity/atom numbers: g/2pi = 0.17 GHz, kappa = gamma = 2pi 0.2 GHz,
// sigma = 3 ns, Omega/2pi = 100 GHz, Gamma/2pi = 1 MHz, qubit in (|0>+|1>)/sqrt2.
inline SystemParams cavity_defaults() {
  SystemParams p;
  p.g = from_ghz_over_2pi(0.17);
  p.Gamma = from_mhz_over_2pi(1.0);
  p.Omega = from_ghz_over_2pi(100.0);
  p.Delta = 0.0;
  p.kappa = from_ghz_over_2pi(0.2);
  p.gamma = from_ghz_over_2pi(0.2);
  p.sigma = 3.0;
  p.rho00_0 = 0.5;
  p.rho11_0 = 0.5;
  p.rho10_0 = 0.5;
  return p;
}

// Coherent pulse, alpha = 10.
inline SystemParams coherent_baseline() {
  SystemParams p = cavity_defaults();
  p.alpha = 10.0;
  p.squeeze = make_squeeze(0.0, kDefaultSqueezePhase);
  return p;
}

// Bright squeezed pulse, alpha = 100, r = 1.
inline SystemParams squeezed_baseline() {
  SystemParams p = cavity_defaults();
  p.alpha = 100.0;
  p.squeeze = make_squeeze(1.0, kDefaultSqueezePhase);
  return p;
}

}  // namespace sqcavity::presets
