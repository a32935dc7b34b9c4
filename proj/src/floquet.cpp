#include "mbs/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "mbs/errors.hpp"

namespace mbs {

double bessel_j0(double x) { return std::cyl_bessel_j(0.0, std::abs(x)); }

namespace {

double bracketed_root(double lo, double hi, auto f) {
  std::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::abs(a - b) <= 1e-15 * std::max(1.0, std::abs(a)); };
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  return 0.5 * (a + b);
}

}  // namespace

double bessel_j0_zero(int n) {
  if (n < 1 || n > 20) {
    throw Error(ErrorKind::InvalidArgument, "bessel_j0_zero supports 1 <= n <= 20, got " + std::to_string(n));
  }
  // McMahon's estimate is within 0.05 of the zero already for n = 1.
  const double guess = (n - 0.25) * std::numbers::pi;
  return bracketed_root(guess - 0.5, guess + 0.5, [](double x) { return bessel_j0(x); });
}

double invert_j0(double target) {
  if (!(target > 0.0 && target <= 1.0)) {
    throw Error(ErrorKind::TargetOutOfRange, "J0 target must lie in (0, 1], got " + std::to_string(target));
  }
  if (target == 1.0) return 0.0;
  return bracketed_root(0.0, bessel_j0_zero(1), [target](double x) { return bessel_j0(x) - target; });
}

EffectiveConfig effective_config(const ChainConfig& config, const DriveParams& drive) {
  if (!(drive.omega > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "drive frequency must be positive");
  }
  auto snap = [](double j) { return std::abs(j) <= kBesselZeroSnap ? 0.0 : j; };
  const double x = drive.mu0 / drive.omega;

  EffectiveConfig e;
  e.j0_boundary = snap(bessel_j0(x));
  e.j0_pairing = snap(bessel_j0(2.0 * x));
  e.base = config;

  e.base.center.base.delta *= e.j0_pairing;
  e.base.center.delta2 *= e.j0_pairing;
  JunctionParams& j = e.base.junction;
  for (double* amp : {&j.t1, &j.t2, &j.t1p, &j.t2p, &j.delta1, &j.delta2}) *amp *= e.j0_boundary;

  const SegmentParams& c = config.center.base;
  e.high_frequency = drive.omega >= 10.0 * std::max({std::abs(c.mu), c.t, c.delta});
  return e;
}

}  // namespace mbs
