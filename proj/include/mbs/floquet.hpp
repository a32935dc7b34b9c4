#pragma once
// High-frequency description of a chain whose centre is driven by
// mu0 cos(omega t). In the rotating frame every bond with exactly one
// central endpoint picks up J0(mu0/omega) and every central pairing term
// picks up J0(2 mu0/omega); central hopping and the outer segments are
// unchanged.

#include "mbs/chain.hpp"

namespace mbs {

/// Zeroth-order Bessel function of the first kind.
double bessel_j0(double x);

/// n-th positive zero of J0, 1 <= n <= 20.
double bessel_j0_zero(int n);

/// Preimage of target in (0, 1] on [0, first zero]. Throws TargetOutOfRange.
double invert_j0(double target);

struct EffectiveConfig {
  ChainConfig base;
  double j0_boundary = 1.0;  // J0(mu0 / omega)
  double j0_pairing = 1.0;   // J0(2 mu0 / omega)
  /// omega >= 10 max(|mu_c|, t_c, delta_c).
  bool high_frequency = true;

  /// Renormalised amplitudes may be negative.
  ValidatedConfig validated() const { return validate(base, AmplitudeSigns::signed_allowed); }
};

/// Bessel factors below this magnitude are treated as exact zeros: the drive
/// sits on a zero of J0 to within double rounding.
constexpr double kBesselZeroSnap = 1e-12;

EffectiveConfig effective_config(const ChainConfig& config, const DriveParams& drive);

}  // namespace mbs
