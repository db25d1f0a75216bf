#pragma once

// Far-detuned closed forms obtained by treating g S(t) alpha~(t) as a
// constant drive and keeping only the zero-frequency pole. They serve as
// fast surrogates and as an independent check on the integrator.

#include <optional>

#include "sqcavity/model.hpp"

namespace sqcavity {

struct ApproxReport {
  double rho_ee_peak = 0.0;
  double theta_approx = 0.0;
  double loss_approx = 0.0;      // fractional amplitude loss 1 - |alpha~(inf)| / |alpha|
  double sigma10_damping = 1.0;  // |Sigma10(inf) / Sigma10(0)|
};

struct SigmaChannelApprox {
  cplx sigma_e0_scale;   // Sigma^{e0} / Sigma^{10}(0) at the pulse peak
  cplx sigma10_damping;  // Sigma^{10}(inf) / Sigma^{10}(0)
};

// Gamma^2 + Omega^2 + 2 g^2 |S_bar alpha|^2, with S_bar the intensity-weighted
// pulse amplitude. Throws ConfigError when zero.
double saturation_denominator(const SystemParams& p);

double steady_rho_ee(const SystemParams& p, double S);
cplx steady_rho_e1(const SystemParams& p, double S);

/// Linearized field amplitude alpha~(t) = alpha [1 - i c F(t)], with
/// F(t) the accumulated pulse energy up to t and
/// c = g^2 (Omega - i Gamma) K / (2 D).
cplx approx_alpha(const SystemParams& p, double t);

// arg of the linearized alpha~(infinity) / alpha.
double approx_phase(const SystemParams& p);

/// Smallest coupling g >= 0 whose approx_phase equals theta_target, if the
/// target is reachable at all (same sign as Omega, below saturation).
std::optional<double> invert_approx_phase(const SystemParams& p, double theta_target);

SigmaChannelApprox approx_sigma_channel(const SystemParams& p);

ApproxReport approx_report(const SystemParams& p);

}  // namespace sqcavity
