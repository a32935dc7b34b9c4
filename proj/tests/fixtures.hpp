#pragma once
// Configurations shared by the unit and acceptance suites.

#include <random>

#include "mbs/chain.hpp"

namespace fixtures {

inline mbs::ChainConfig chain(double mu_c, double delta_c, int n_bonds, double t_end = 1.0, int left = 5,
                              int right = 5) {
  mbs::ChainConfig c;
  c.left = {0.0, t_end, t_end, left};
  c.center.base = {mu_c, 1.0, delta_c, n_bonds + 1};
  c.right = {0.0, t_end, t_end, right};
  c.junction.t1 = c.junction.t2 = 1.0;
  return c;
}

// Sweep geometry: sweet-spot ends with t = delta = 1.
inline mbs::ChainConfig fig3(double mu_c, int n_bonds, double delta_c = 5.0) {
  return chain(mu_c, delta_c, n_bonds);
}

// 20 sites: N1 = 5, centre 11 sites (N = 10), 4 sites on the right; ends at t = delta = 5.
inline mbs::ChainConfig fig7(double mu_c, double delta_c = 5.0) {
  return chain(mu_c, delta_c, 10, 5.0, 5, 4);
}

// Long-range tie: t_c2 = t_c1 / 2, delta_c2 = delta_c1 / 2, t1' = t2' = t_c2.
inline mbs::ChainConfig fig6(double mu_c, int n_bonds = 10) {
  mbs::ChainConfig c = fig3(mu_c, n_bonds);
  c.center.t2 = 0.5;
  c.center.delta2 = 2.5;
  c.junction.t1p = c.junction.t2p = 0.5;
  return c;
}

// Arbitrary amplitudes, lengths and chemical potentials; all terms switched on.
inline mbs::ChainConfig random_config(std::mt19937& rng, mbs::Boundary b) {
  std::uniform_real_distribution<double> amp(0.0, 3.0);
  std::uniform_real_distribution<double> mu(-4.0, 4.0);
  std::uniform_int_distribution<int> len(1, 6);
  mbs::ChainConfig c;
  c.left = {mu(rng), amp(rng), amp(rng), len(rng)};
  c.center.base = {mu(rng), amp(rng), amp(rng), len(rng) + 1};
  c.center.t2 = amp(rng);
  c.center.delta2 = amp(rng);
  c.right = {mu(rng), amp(rng), amp(rng), len(rng)};
  c.junction = {amp(rng), amp(rng), amp(rng), amp(rng), amp(rng), amp(rng)};
  c.boundary = b;
  return c;
}

}  // namespace fixtures
