#pragma once
// Two-level reduction of the near-zero sector on a 6-site chain. The initial
// Majorana state splits equally over the +-eps doublet, so the overlap is
// cos^2(eps t) and the Rabi frequency is 2 eps.

#include <cmath>
#include <numbers>

#include "mbs/bdg.hpp"
#include "mbs/dynamics.hpp"

namespace calibration {

struct TwoLevel {
  double epsilon = 0.0;
  double weight_plus = 0.0;
  double weight_minus = 0.0;
  double omega_two_level = 0.0;  // from the reduced 2x2 problem
  double omega_full = 0.0;       // from full evolution
};

inline mbs::ChainConfig six_site() {
  mbs::ChainConfig c;
  c.left = {0.0, 1.0, 1.0, 2};
  c.center.base = {2.0, 1.0, 3.0, 2};
  c.right = {0.0, 1.0, 1.0, 2};
  c.junction.t1 = c.junction.t2 = 1.0;
  return c;
}

inline TwoLevel run() {
  const mbs::ValidatedConfig v = mbs::validate(six_site());
  const mbs::BdgMatrix m = mbs::build_bdg(v);
  const mbs::SpectrumResult s = mbs::diagonalize(m);
  const int n = v.site_count();
  const mbs::StateVector psi0 = mbs::initial_majorana_state(v, -1);

  TwoLevel r;
  r.epsilon = mbs::extract_coupling(s);
  // sorted spectrum: ..., -eps, -0, +0, +eps, ...
  const Eigen::Index plus = n + 1, minus = n - 2;
  r.weight_plus = std::norm(s.eigenvectors.col(plus).dot(psi0.components));
  r.weight_minus = std::norm(s.eigenvectors.col(minus).dot(psi0.components));

  // |w+ e^{-i eps t} + w- e^{i eps t}|^2 / (w+ + w-)^2 oscillates at 2 eps
  // with visibility 4 w+ w- / (w+ + w-)^2.
  const double e_plus = s.eigenvalues(plus), e_minus = s.eigenvalues(minus);
  r.omega_two_level = e_plus - e_minus;

  const double span = 20.0 * std::numbers::pi / r.epsilon;
  const std::vector<double> times = mbs::uniform_times(span, span / 8192.0);
  r.omega_full = mbs::extract_rabi_frequency(mbs::evolve_static(m, psi0, times)).omega_rabi;
  return r;
}

}  // namespace calibration
