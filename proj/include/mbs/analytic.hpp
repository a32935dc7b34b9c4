#pragma once
// Closed-form and semi-analytic estimates of the Majorana coupling across a
// trivial central segment.
//
// The formulas are evaluated on Majorana-normalised junction amplitudes: a
// fermionic bond (t, delta) between a sweet-spot end and the centre couples
// the end Majorana with strength (t + delta) / 2. Use majorana_normalized()
// (or lattice_prediction()) to compare against the BdG lattice.

#include <array>
#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "mbs/chain.hpp"

namespace mbs {

struct BulkSpectrumPoint {
  double k = 0.0;
  double E = 0.0;
  double u = 0.0;
  double v = 0.0;
};

/// Dispersion and coherence factors of an infinite nearest-neighbour centre.
/// Throws GaplessPoint when E_k <= 1e-12.
BulkSpectrumPoint bulk_spectrum(const CenterParams& center, double k);

/// eps0 with 1/eps0 = ln[(delta - t) / (sqrt(mu^2 + delta^2 - t^2) - mu)].
/// Throws DomainError naming the failed precondition.
double coherence_length(double mu_c, double t_c, double delta_c);

enum class CouplingMethod { eq12, eq12_boundary_pairing, longrange_residue, sw_ksum };
std::string_view to_string(CouplingMethod m);

struct CouplingEstimate {
  double epsilon = 0.0;
  CouplingMethod method = CouplingMethod::eq12;
  std::optional<double> coherence_length;
  std::vector<std::complex<double>> roots;  // longrange_residue only
  double imag_ratio = 0.0;                  // sw_ksum only: |Im S| / |S|
};

/// eps = t1 t2 / sqrt(mu^2 + delta^2 - t^2) * exp(-N / eps0), N = central bonds.
CouplingEstimate coupling_eq12(double t1, double t2, const CenterParams& center, int n_bonds);

/// coupling_eq12 with the product t1 t2 replaced by (t1 + delta1)(t2 + delta2).
CouplingEstimate coupling_boundary_pairing(const JunctionParams& junction, const CenterParams& center,
                                           int n_bonds);

struct QuarticRoots {
  /// Finite roots first; roots lost to a vanishing leading coefficient are
  /// reported as complex infinity at the end.
  std::array<std::complex<double>, 4> roots;
  int finite = 4;
  std::vector<int> inside_unit_circle;  // indices with |z| < 1 - tol_circle
  double residual = 0.0;                // max |p(z)| / (max|c| * max(1,|z|)^deg)
  double leading = 0.0;                 // leading nonzero coefficient
};

constexpr double kTolCircle = 1e-9;
constexpr double kTolRoot = 1e-7;

/// Roots of (dc2 - tc2) z^4 + (dc1 - tc1) z^3 + 2 mu z^2 - (dc1 + tc1) z - (dc2 + tc2).
QuarticRoots quartic_roots(const CenterParams& center);
/// Same for arbitrary real coefficients, highest degree first. Companion
/// matrix eigenvalues; throws DegenerateRoots when two finite roots coincide.
QuarticRoots solve_quartic(const std::array<double, 5>& coeffs);

/// Residue sum over the decaying roots:
///   eps = sum_k |2 (t1 z_k + t1') (t2 z_k + t2') z_k^(N-1) / p'(z_k)|.
/// Throws BoundaryRoot when a root sits on the unit circle (gapless centre).
CouplingEstimate coupling_longrange(const JunctionParams& junction, const CenterParams& center,
                                    int n_bonds);

/// Discrete first-order Schrieffer-Wolff sum
///   C |sum_k t1 t2 (u_k + v_k)(u_k - v_k) e^{ikN} / (2 E_k)|
/// on a ring of kKsumRing sites, with C fixed once against coupling_eq12 at
/// (mu = 8, delta = 5, t = 1, N = 12).
constexpr int kKsumRing = 4096;
CouplingEstimate sw_coupling_ksum(const JunctionParams& junction, const CenterParams& center,
                                  int n_bonds);
double ksum_normalization();

/// Junction amplitudes halved: the Majorana-normalised couplings of the
/// fermionic lattice bonds.
JunctionParams majorana_normalized(const JunctionParams& junction);

/// Evaluate a formula for a full lattice config, on normalised junctions.
/// eq12 switches to the boundary-pairing form when delta1 or delta2 is set.
CouplingEstimate lattice_prediction(const ChainConfig& config, CouplingMethod method);

}  // namespace mbs
