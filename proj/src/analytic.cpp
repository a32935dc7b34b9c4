#include "mbs/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

#include "mbs/errors.hpp"

namespace mbs {

using cplx = std::complex<double>;

namespace {

std::string fmt(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

void require_nearest_neighbour(const CenterParams& c, const char* what) {
  if (c.t2 != 0.0 || c.delta2 != 0.0) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + " needs a nearest-neighbour centre (t2 = delta2 = 0)");
  }
}

void require_bonds(int n_bonds) {
  if (n_bonds < 1) {
    throw Error(ErrorKind::InvalidArgument, "central bond count must be >= 1, got " + std::to_string(n_bonds));
  }
}

}  // namespace

BulkSpectrumPoint bulk_spectrum(const CenterParams& center, double k) {
  require_nearest_neighbour(center, "bulk_spectrum");
  const SegmentParams& c = center.base;
  const double xi = c.mu - c.t * std::cos(k);
  const double gap = c.delta * std::sin(k);
  const double e = std::hypot(xi, gap);
  if (e <= 1e-12) {
    throw Error(ErrorKind::GaplessPoint, "E_k = " + fmt(e) + " at k = " + fmt(k));
  }
  BulkSpectrumPoint p;
  p.k = k;
  p.E = e;
  p.u = std::sqrt(std::max(0.0, 0.5 * (1.0 + xi / e)));
  p.v = std::sqrt(std::max(0.0, 0.5 * (1.0 - xi / e)));
  return p;
}

double coherence_length(double mu_c, double t_c, double delta_c) {
  if (!(delta_c > t_c)) {
    throw Error(ErrorKind::DomainError,
                "coherence length needs delta_c > t_c (delta_c = " + fmt(delta_c) + ", t_c = " + fmt(t_c) + ")");
  }
  const double s2 = mu_c * mu_c + delta_c * delta_c - t_c * t_c;
  if (!(s2 > 0.0)) {
    throw Error(ErrorKind::DomainError, "coherence length needs mu_c^2 + delta_c^2 > t_c^2");
  }
  const double arg = (delta_c - t_c) / (std::sqrt(s2) - mu_c);
  if (!(arg > 1.0)) {
    throw Error(ErrorKind::DomainError,
                "coherence length needs a decaying solution (log argument " + fmt(arg) + " <= 1)");
  }
  return 1.0 / std::log(arg);
}

std::string_view to_string(CouplingMethod m) {
  switch (m) {
    case CouplingMethod::eq12: return "eq12";
    case CouplingMethod::eq12_boundary_pairing: return "eq12_boundary_pairing";
    case CouplingMethod::longrange_residue: return "longrange";
    case CouplingMethod::sw_ksum: return "ksum";
  }
  return "unknown";
}

CouplingEstimate coupling_eq12(double t1, double t2, const CenterParams& center, int n_bonds) {
  require_bonds(n_bonds);
  const SegmentParams& c = center.base;
  const double xi0 = coherence_length(c.mu, c.t, c.delta);
  const double s = std::sqrt(c.mu * c.mu + c.delta * c.delta - c.t * c.t);
  CouplingEstimate e;
  e.method = CouplingMethod::eq12;
  e.coherence_length = xi0;
  e.epsilon = std::abs(t1 * t2) / s * std::exp(-n_bonds / xi0);
  return e;
}

CouplingEstimate coupling_boundary_pairing(const JunctionParams& j, const CenterParams& center,
                                           int n_bonds) {
  CouplingEstimate e = coupling_eq12(j.t1 + j.delta1, j.t2 + j.delta2, center, n_bonds);
  e.method = CouplingMethod::eq12_boundary_pairing;
  return e;
}

QuarticRoots solve_quartic(const std::array<double, 5>& coeffs) {
  double cmax = 0.0;
  for (double c : coeffs) cmax = std::max(cmax, std::abs(c));
  if (cmax == 0.0) throw Error(ErrorKind::InvalidArgument, "all quartic coefficients vanish");

  // Strip vanishing leading coefficients; each one moves a root to infinity.
  int lead = 0;
  while (lead < 4 && std::abs(coeffs[lead]) <= 1e-14 * cmax) ++lead;
  const int degree = 4 - lead;

  QuarticRoots r;
  r.finite = degree;
  r.leading = coeffs[lead];
  const double inf = std::numeric_limits<double>::infinity();
  r.roots.fill(cplx(inf, 0.0));

  if (degree >= 1) {
    // Eigen wants lowest degree first.
    Eigen::VectorXd poly(degree + 1);
    for (int i = 0; i <= degree; ++i) poly(i) = coeffs[4 - i];
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(poly);
    const auto& roots = solver.roots();
    for (int i = 0; i < degree; ++i) r.roots[i] = roots(i);
  }

  // Deterministic order: ascending modulus, then argument.
  std::sort(r.roots.begin(), r.roots.begin() + degree, [](cplx a, cplx b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return std::arg(a) < std::arg(b);
  });

  for (int i = 0; i < degree; ++i) {
    const cplx z = r.roots[i];
    cplx p = 0.0;
    for (int k = lead; k <= 4; ++k) p = p * z + coeffs[k];
    const double scale = cmax * std::pow(std::max(1.0, std::abs(z)), degree);
    r.residual = std::max(r.residual, std::abs(p) / scale);
  }
  if (r.residual > 1e-9) {
    throw Error(ErrorKind::ConvergenceFailure, "quartic root residual " + fmt(r.residual) + " exceeds 1e-9");
  }
  for (int i = 0; i < degree; ++i) {
    for (int j = i + 1; j < degree; ++j) {
      const double gap = std::abs(r.roots[i] - r.roots[j]);
      if (gap <= kTolRoot * std::max(1.0, std::abs(r.roots[i]))) {
        std::ostringstream msg;
        msg << "roots " << r.roots[i] << " and " << r.roots[j] << " coincide within " << kTolRoot;
        throw Error(ErrorKind::DegenerateRoots, msg.str());
      }
    }
  }
  for (int i = 0; i < degree; ++i) {
    if (std::abs(r.roots[i]) < 1.0 - kTolCircle) r.inside_unit_circle.push_back(i);
  }
  return r;
}

QuarticRoots quartic_roots(const CenterParams& center) {
  const SegmentParams& c = center.base;
  return solve_quartic({center.delta2 - center.t2, c.delta - c.t, 2.0 * c.mu, -(c.delta + c.t),
                        -(center.delta2 + center.t2)});
}

CouplingEstimate coupling_longrange(const JunctionParams& j, const CenterParams& center, int n_bonds) {
  require_bonds(n_bonds);
  const QuarticRoots q = quartic_roots(center);
  for (int i = 0; i < q.finite; ++i) {
    if (std::abs(std::abs(q.roots[i]) - 1.0) <= kTolCircle) {
      std::ostringstream msg;
      msg << "root " << q.roots[i] << " lies on the unit circle (gapless centre)";
      throw Error(ErrorKind::BoundaryRoot, msg.str());
    }
  }

  double eps = 0.0;
  for (int k : q.inside_unit_circle) {
    const cplx z = q.roots[k];
    cplx denom = q.leading;
    for (int i = 0; i < q.finite; ++i) {
      if (i != k) denom *= z - q.roots[i];
    }
    cplx zpow = 1.0;
    for (int n = 0; n < n_bonds - 1; ++n) zpow *= z;
    eps += std::abs(2.0 * (j.t1 * z + j.t1p) * (j.t2 * z + j.t2p) * zpow / denom);
  }

  CouplingEstimate e;
  e.method = CouplingMethod::longrange_residue;
  e.epsilon = eps;
  e.roots.assign(q.roots.begin(), q.roots.end());
  return e;
}

namespace {

cplx ksum_raw(double t1, double t2, const CenterParams& center, int n_bonds) {
  cplx sum = 0.0;
  for (int m = 0; m < kKsumRing; ++m) {
    const double k = 2.0 * std::numbers::pi * m / kKsumRing;
    const BulkSpectrumPoint p = bulk_spectrum(center, k);
    sum += t1 * t2 * (p.u + p.v) * (p.u - p.v) * std::polar(1.0, k * n_bonds) / (2.0 * p.E);
  }
  return sum;
}

}  // namespace

double ksum_normalization() {
  static const double c = [] {
    CenterParams ref;
    ref.base = {8.0, 1.0, 5.0, 13};
    const double target = coupling_eq12(1.0, 1.0, ref, 12).epsilon;
    return target / std::abs(ksum_raw(1.0, 1.0, ref, 12));
  }();
  return c;
}

CouplingEstimate sw_coupling_ksum(const JunctionParams& j, const CenterParams& center, int n_bonds) {
  require_bonds(n_bonds);
  require_nearest_neighbour(center, "sw_coupling_ksum");
  CouplingEstimate e;
  e.method = CouplingMethod::sw_ksum;
  const cplx s = ksum_raw(j.t1, j.t2, center, n_bonds);
  e.epsilon = ksum_normalization() * std::abs(s);
  e.imag_ratio = std::abs(s) > 0.0 ? std::abs(s.imag()) / std::abs(s) : 0.0;
  return e;
}

JunctionParams majorana_normalized(const JunctionParams& j) {
  return {0.5 * j.t1, 0.5 * j.t2, 0.5 * j.t1p, 0.5 * j.t2p, 0.5 * j.delta1, 0.5 * j.delta2};
}

CouplingEstimate lattice_prediction(const ChainConfig& config, CouplingMethod method) {
  const JunctionParams j = majorana_normalized(config.junction);
  const int n = config.center.base.length - 1;
  switch (method) {
    case CouplingMethod::eq12:
    case CouplingMethod::eq12_boundary_pairing:
      if (j.delta1 != 0.0 || j.delta2 != 0.0 || method == CouplingMethod::eq12_boundary_pairing) {
        return coupling_boundary_pairing(j, config.center, n);
      }
      return coupling_eq12(j.t1, j.t2, config.center, n);
    case CouplingMethod::longrange_residue:
      return coupling_longrange(j, config.center, n);
    case CouplingMethod::sw_ksum:
      return sw_coupling_ksum(j, config.center, n);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown coupling method");
}

}  // namespace mbs
