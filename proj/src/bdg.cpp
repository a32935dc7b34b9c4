#include "mbs/bdg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "mbs/errors.hpp"

namespace mbs {

using cplx = std::complex<double>;

BdgBuilder::BdgBuilder(int sites)
    : sites_(sites),
      hopping_(Eigen::MatrixXd::Zero(sites, sites)),
      pairing_(Eigen::MatrixXd::Zero(sites, sites)) {
  if (sites < 1) throw Error(ErrorKind::InvalidArgument, "BdG builder needs at least one site");
}

BdgBuilder& BdgBuilder::onsite(int i, double mu) {
  hopping_(i, i) += mu;
  return *this;
}

BdgBuilder& BdgBuilder::bond(int i, int j, double t, double delta) {
  if (i == j) throw Error(ErrorKind::InvalidArgument, "bond endpoints must differ");
  hopping_(i, j) += -0.5 * t;
  hopping_(j, i) += -0.5 * t;
  pairing_(i, j) += 0.5 * delta;
  pairing_(j, i) += -0.5 * delta;
  return *this;
}

BdgMatrix BdgBuilder::finish(Boundary boundary) const {
  const int n = sites_;
  BdgMatrix m;
  m.sites = n;
  m.boundary = boundary;
  m.matrix.resize(2 * n, 2 * n);
  m.matrix.topLeftCorner(n, n) = hopping_.cast<cplx>();
  m.matrix.topRightCorner(n, n) = pairing_.cast<cplx>();
  m.matrix.bottomLeftCorner(n, n) = pairing_.transpose().cast<cplx>();
  m.matrix.bottomRightCorner(n, n) = -hopping_.cast<cplx>();
  return m;
}

BdgMatrix build_bdg(const ValidatedConfig& v) {
  const ChainConfig& c = v.config();
  const int n1 = c.left.length;
  const int nc = c.center.base.length;
  const int n = v.site_count();
  const int first_right = n1 + nc;

  BdgBuilder b(n);
  for (int i = 0; i < n1; ++i) b.onsite(i, c.left.mu);
  for (int i = n1; i < first_right; ++i) b.onsite(i, c.center.base.mu);
  for (int i = first_right; i < n; ++i) b.onsite(i, c.right.mu);

  for (int i = 0; i + 1 < n1; ++i) b.bond(i, i + 1, c.left.t, c.left.delta);
  for (int i = n1; i + 1 < first_right; ++i) b.bond(i, i + 1, c.center.base.t, c.center.base.delta);
  if (c.center.t2 != 0.0 || c.center.delta2 != 0.0) {
    for (int i = n1; i + 2 < first_right; ++i) b.bond(i, i + 2, c.center.t2, c.center.delta2);
  }
  for (int i = first_right; i + 1 < n; ++i) b.bond(i, i + 1, c.right.t, c.right.delta);

  // junctions: site -1 is index n1-1, site 0 is n1, site N is first_right-1
  b.bond(n1 - 1, n1, c.junction.t1, c.junction.delta1);
  b.bond(first_right - 1, first_right, c.junction.t2, c.junction.delta2);
  if (c.junction.t1p != 0.0) b.bond(n1 - 1, n1 + 1, c.junction.t1p, 0.0);
  if (c.junction.t2p != 0.0) b.bond(first_right - 2, first_right, c.junction.t2p, 0.0);

  if (c.boundary == Boundary::periodic) b.bond(n - 1, 0, c.left.t, c.left.delta);

  BdgMatrix m = b.finish(c.boundary);
  m.source = c;
  return m;
}

double ph_residual(const BdgMatrix& m) {
  const int n = m.sites;
  const Eigen::MatrixXcd& h = m.matrix;
  Eigen::MatrixXcd swapped(2 * n, 2 * n);
  swapped.topLeftCorner(n, n) = h.bottomRightCorner(n, n);
  swapped.topRightCorner(n, n) = h.bottomLeftCorner(n, n);
  swapped.bottomLeftCorner(n, n) = h.topRightCorner(n, n);
  swapped.bottomRightCorner(n, n) = h.topLeftCorner(n, n);
  if (h.size() == 0) return 0.0;
  return (h + swapped.conjugate()).cwiseAbs().maxCoeff();
}

double hermiticity_residual(const BdgMatrix& m) {
  if (m.matrix.size() == 0) return 0.0;
  return (m.matrix - m.matrix.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd SpectrumResult::positive_branch() const {
  const Eigen::Index half = eigenvalues.size() / 2;
  return eigenvalues.tail(eigenvalues.size() - half);
}

namespace {

Eigen::Index argmax_abs(const Eigen::VectorXcd& v) {
  Eigen::Index best = 0;
  v.cwiseAbs().maxCoeff(&best);
  return best;
}

void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  const cplx lead = v(argmax_abs(v));
  if (std::abs(lead) > 0.0) v *= std::conj(lead) / std::abs(lead);
}

}  // namespace

SpectrumResult diagonalize(const BdgMatrix& m, double zero_threshold) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m.matrix);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  SpectrumResult r;
  r.eigenvalues = solver.eigenvalues();
  r.eigenvectors = solver.eigenvectors();
  r.zero_threshold = zero_threshold;
  r.sites = m.sites;
  r.boundary = m.boundary;
  if (m.source) r.sweet_spot_ends = at_sweet_spot(m.source->left) && at_sweet_spot(m.source->right);

  const Eigen::Index dim = r.eigenvalues.size();
  for (Eigen::Index k = 0; k < dim; ++k) fix_phase(r.eigenvectors.col(k));

  // Degenerate clusters: order columns by the index of their largest component.
  const double scale = std::max(1.0, dim > 0 ? r.eigenvalues.cwiseAbs().maxCoeff() : 0.0);
  const double tie = 1e-10 * scale;
  Eigen::Index start = 0;
  while (start < dim) {
    Eigen::Index stop = start + 1;
    while (stop < dim && r.eigenvalues(stop) - r.eigenvalues(stop - 1) <= tie) ++stop;
    if (stop - start > 1) {
      std::vector<Eigen::Index> order(stop - start);
      std::iota(order.begin(), order.end(), start);
      std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return argmax_abs(r.eigenvectors.col(a)) < argmax_abs(r.eigenvectors.col(b));
      });
      Eigen::MatrixXcd block(dim, stop - start);
      for (std::size_t j = 0; j < order.size(); ++j) block.col(j) = r.eigenvectors.col(order[j]);
      r.eigenvectors.middleCols(start, stop - start) = block;
    }
    start = stop;
  }
  return r;
}

double extract_coupling(const SpectrumResult& s) {
  if (!s.sweet_spot_ends) {
    throw Error(ErrorKind::NoZeroSector, "outer segments must sit at the sweet spot (mu = 0, delta = t)");
  }
  const Eigen::VectorXd pos = s.positive_branch();
  if (s.boundary == Boundary::periodic) {
    if (pos.size() < 1) throw Error(ErrorKind::NoZeroSector, "empty spectrum");
    return std::max(0.0, pos(0));
  }
  if (pos.size() < 2) {
    throw Error(ErrorKind::NoZeroSector, "need at least two positive levels");
  }
  if (std::abs(pos(0)) > s.zero_threshold) {
    throw Error(ErrorKind::NoZeroSector,
                "smallest positive level " + std::to_string(pos(0)) + " exceeds zero threshold " +
                    std::to_string(s.zero_threshold) +
                    " (outer segments off the sweet spot or too short)");
  }
  return std::max(0.0, pos(1));
}

Eigen::MatrixXcd majorana_basis(const SpectrumResult& s) {
  const int n = s.sites;
  const Eigen::VectorXd pos = s.positive_branch();
  if (!s.sweet_spot_ends) {
    throw Error(ErrorKind::NoZeroSector, "outer segments must sit at the sweet spot (mu = 0, delta = t)");
  }
  int count = 0;
  if (s.boundary == Boundary::periodic) {
    count = 2;
  } else {
    if (pos.size() < 2 || std::abs(pos(0)) > s.zero_threshold) {
      throw Error(ErrorKind::NoZeroSector, "no exact outer zero pair; Majorana modes are undefined");
    }
    count = 4;
  }
  if (2 * n < count) throw Error(ErrorKind::NoZeroSector, "lattice too small for the zero sector");

  // The near-zero levels sit in the middle of the sorted spectrum.
  const Eigen::MatrixXcd sector = s.eigenvectors.middleCols(n - count / 2, count);

  // Localise: diagonalise the site-position operator inside the sector. The
  // sector is particle-hole invariant, so each non-degenerate position
  // eigenvector is self-conjugate up to a phase.
  Eigen::VectorXd position(2 * n);
  for (int i = 0; i < n; ++i) position(i) = position(i + n) = i;
  const Eigen::MatrixXcd x = sector.adjoint() * position.asDiagonal() * sector;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(x);
  Eigen::MatrixXcd modes = sector * solver.eigenvectors();

  for (int j = 0; j < count; ++j) {
    Eigen::VectorXcd q = modes.col(j);
    Eigen::VectorXcd partner(2 * n);
    partner.head(n) = q.tail(n).conjugate();
    partner.tail(n) = q.head(n).conjugate();
    const cplx overlap = q.dot(partner);  // partner = e^{i a} q
    q *= std::exp(cplx(0.0, 0.5 * std::arg(overlap)));
    // Sign convention: largest particle component has positive real part.
    Eigen::Index lead = 0;
    q.head(n).cwiseAbs().maxCoeff(&lead);
    if (q(lead).real() < 0.0) q = -q;
    modes.col(j) = q;
  }
  return modes;
}

std::vector<MajoranaMode> majorana_wavefunctions(const SpectrumResult& s) {
  const Eigen::MatrixXcd basis = majorana_basis(s);
  const int n = s.sites;
  const int count = static_cast<int>(basis.cols());
  const Eigen::VectorXd pos = s.positive_branch();

  std::vector<MajoranaMode> out;
  out.reserve(count);
  for (int j = 0; j < count; ++j) {
    MajoranaMode mode;
    mode.vector = basis.col(j);
    mode.site_weights.resize(n);
    double com = 0.0;
    for (int i = 0; i < n; ++i) {
      mode.site_weights[i] = std::norm(mode.vector(i)) + std::norm(mode.vector(i + n));
      com += i * mode.site_weights[i];
    }
    mode.position = com;
    const bool inner = count == 2 || j == 1 || j == 2;
    mode.energy = std::max(0.0, inner ? (count == 2 ? pos(0) : pos(1)) : pos(0));
    out.push_back(std::move(mode));
  }
  return out;
}

double numeric_coupling(const ValidatedConfig& config, double zero_threshold) {
  return extract_coupling(diagonalize(build_bdg(config), zero_threshold));
}

double numeric_coupling(const ChainConfig& config, double zero_threshold) {
  return numeric_coupling(validate(config), zero_threshold);
}

}  // namespace mbs
