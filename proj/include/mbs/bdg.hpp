#pragma once
// Bogoliubov-de Gennes representation of the full chain.
//
// With A = [a_0..a_{n-1}, a_0^dag..a_{n-1}^dag]^T (n = site count, internal
// indices) the quadratic Hamiltonian is H = 1/2 A^dag H_bdg A. A bond
//   -(t/2) a_i^dag a_j + (delta/2) a_i^dag a_j^dag + h.c.
// contributes -t/2 to the particle block at (i,j),(j,i) and +delta/2, -delta/2
// to the anomalous block at (i,j),(j,i).
//
// The pairing sign is the gauge a -> i a of the more common -(delta/2) form.
// Spectra are identical; the choice makes gamma_n = a_n + a_n^dag the free
// Majorana at the right end of a sweet-spot segment and
// gamma'_n = i(a_n^dag - a_n) the one at its left end.

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "mbs/chain.hpp"

namespace mbs {

struct BdgMatrix {
  Eigen::MatrixXcd matrix;
  int sites = 0;
  Boundary boundary = Boundary::open;
  std::optional<ChainConfig> source;

  int dim() const noexcept { return 2 * sites; }
};

/// Incremental builder on internal site indices. Used by build_bdg and
/// directly for small hand-made lattices.
class BdgBuilder {
 public:
  explicit BdgBuilder(int sites);

  BdgBuilder& onsite(int i, double mu);
  BdgBuilder& bond(int i, int j, double t, double delta);

  BdgMatrix finish(Boundary boundary = Boundary::open) const;

 private:
  int sites_;
  Eigen::MatrixXd hopping_;
  Eigen::MatrixXd pairing_;
};

/// Segment terms, junction bonds (t1/delta1 on (-1,0), t2/delta2 on (N,N+1),
/// t1p on (-1,1), t2p on (N-1,N+1)), next-nearest central bonds and, for
/// periodic boundaries, a wrap bond N2 -> -N1 carrying the left amplitudes.
BdgMatrix build_bdg(const ValidatedConfig& config);

/// max |H + tau_x H^* tau_x|; zero for a particle-hole symmetric matrix.
double ph_residual(const BdgMatrix& m);
/// max |H - H^dag|.
double hermiticity_residual(const BdgMatrix& m);

struct SpectrumResult {
  Eigen::VectorXd eigenvalues;    // ascending
  Eigen::MatrixXcd eigenvectors;  // columns match eigenvalues
  double zero_threshold = 1e-8;
  int sites = 0;
  Boundary boundary = Boundary::open;
  /// False when the source config has an outer segment off the sweet spot.
  bool sweet_spot_ends = true;

  /// Upper half of the spectrum, ascending. By particle-hole symmetry these
  /// are the quasiparticle energies E >= 0; exact zeros may carry either sign
  /// at round-off level, which is why the split is by position, not by sign.
  Eigen::VectorXd positive_branch() const;
};

/// Dense Hermitian eigendecomposition. Eigenvectors are phase-fixed (largest
/// component real positive) and, inside a degenerate cluster, ordered by the
/// index of their largest component.
SpectrumResult diagonalize(const BdgMatrix& m, double zero_threshold = 1e-8);

/// Hybridisation energy of the inner Majorana pair.
///
/// Open chains with sweet-spot ends have four near-zero levels: the exact
/// outer pair (+-0) and the inner pair (+-eps). The smallest positive level
/// must be below zero_threshold (NoZeroSector otherwise); eps is the next one.
/// A single off-sweet-spot segment still leaves an exact zero (the other
/// segment's free Majorana needs a partner), so the sweet-spot precondition
/// is checked directly when the matrix came from a config.
/// Periodic chains fuse the outer pair into the bulk through the wrap bond,
/// so eps is the smallest positive level.
double extract_coupling(const SpectrumResult& s);

struct MajoranaMode {
  std::vector<double> site_weights;  // |u_i|^2 + |v_i|^2, internal site order
  Eigen::VectorXcd vector;           // self-conjugate: v = u^*
  double energy = 0.0;               // splitting of the pair this mode belongs to
  double position = 0.0;             // weighted mean internal site index
};

/// Near-zero modes rotated into self-conjugate, spatially localised form and
/// ordered left to right: outer-left, inner-left, inner-right, outer-right
/// (open) or inner-left, inner-right (periodic).
std::vector<MajoranaMode> majorana_wavefunctions(const SpectrumResult& s);

/// Orthonormal basis (columns) of the near-zero Majorana modes, same order as
/// majorana_wavefunctions.
Eigen::MatrixXcd majorana_basis(const SpectrumResult& s);

/// Convenience: build, diagonalise and extract.
double numeric_coupling(const ValidatedConfig& config, double zero_threshold = 1e-8);
double numeric_coupling(const ChainConfig& config, double zero_threshold = 1e-8);

}  // namespace mbs
