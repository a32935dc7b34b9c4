#pragma once
// Independent reference implementations used only by the tests.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_dec_float.hpp>

namespace oracles {

// Many-body Hamiltonian on 2^n Fock states, written straight from the
// second-quantised form
//   sum_i mu_i a_i^dag a_i - sum_bonds (t/2 a_i^dag a_j + delta/2 a_i^dag a_j^dag + h.c.)
// with Jordan-Wigner signs. Independent of the BdG builder (and of its
// pairing-sign gauge).
struct Bond {
  int i, j;
  double t, delta;
};

inline Eigen::MatrixXd fock_hamiltonian(const std::vector<double>& mu, const std::vector<Bond>& bonds) {
  const int n = static_cast<int>(mu.size());
  const int dim = 1 << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

  // a_k |s>: returns sign and new state, or 0 if empty.
  auto annihilate = [](int k, int s, int& out) -> int {
    if (!(s >> k & 1)) return 0;
    int sign = (__builtin_popcount(s & ((1 << k) - 1)) % 2) ? -1 : 1;
    out = s ^ (1 << k);
    return sign;
  };
  auto create = [](int k, int s, int& out) -> int {
    if (s >> k & 1) return 0;
    int sign = (__builtin_popcount(s & ((1 << k) - 1)) % 2) ? -1 : 1;
    out = s | (1 << k);
    return sign;
  };
  // amplitude of op2 op1 |s> where ops are (is_create, site)
  auto apply2 = [&](bool c2, int k2, bool c1, int k1, int s, int& out) -> int {
    int mid = 0;
    int s1 = c1 ? create(k1, s, mid) : annihilate(k1, s, mid);
    if (!s1) return 0;
    int s2 = c2 ? create(k2, mid, out) : annihilate(k2, mid, out);
    return s1 * s2;
  };

  for (int s = 0; s < dim; ++s) {
    for (int i = 0; i < n; ++i) {
      if (s >> i & 1) h(s, s) += mu[i];
    }
    for (const Bond& b : bonds) {
      int out = 0;
      int sg;
      // -(t/2) (a_i^dag a_j + a_j^dag a_i)
      if ((sg = apply2(true, b.i, false, b.j, s, out))) h(out, s) += -0.5 * b.t * sg;
      if ((sg = apply2(true, b.j, false, b.i, s, out))) h(out, s) += -0.5 * b.t * sg;
      // -(delta/2) (a_i^dag a_j^dag + a_j a_i)
      if ((sg = apply2(true, b.i, true, b.j, s, out))) h(out, s) += -0.5 * b.delta * sg;
      if ((sg = apply2(false, b.j, false, b.i, s, out))) h(out, s) += -0.5 * b.delta * sg;
    }
  }
  return h;
}

// Sorted many-body levels sum_k n_k E_k, shifted so the lowest is 0.
inline std::vector<double> quasiparticle_levels(const Eigen::VectorXd& energies) {
  const int n = static_cast<int>(energies.size());
  std::vector<double> levels;
  for (int mask = 0; mask < (1 << n); ++mask) {
    double sum = 0.0;
    for (int k = 0; k < n; ++k)
      if (mask >> k & 1) sum += energies(k);
    levels.push_back(sum);
  }
  std::sort(levels.begin(), levels.end());
  const double lowest = levels.front();
  for (double& l : levels) l -= lowest;
  return levels;
}

// max deviation between a Fock spectrum and the quasiparticle reconstruction
inline double fock_mismatch(const std::vector<double>& mu, const std::vector<Bond>& bonds,
                            const Eigen::VectorXd& positive_energies) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> fock(fock_hamiltonian(mu, bonds));
  const Eigen::VectorXd many = fock.eigenvalues();
  const std::vector<double> levels = quasiparticle_levels(positive_energies);
  double worst = 0.0;
  for (std::size_t k = 0; k < levels.size(); ++k) worst = std::max(worst, std::abs(many(k) - many(0) - levels[k]));
  return worst;
}

// J0 by its power series in 50-digit decimal arithmetic.
inline double bessel_j0_series(double x) {
  using big = boost::multiprecision::cpp_dec_float_50;
  const big q = -big(x) * big(x) / 4;
  big term = 1;
  big sum = 1;
  for (int k = 1; k < 400; ++k) {
    term *= q / (big(k) * big(k));
    sum += term;
    if (abs(term) < big("1e-45")) break;
  }
  return sum.convert_to<double>();
}

}  // namespace oracles
