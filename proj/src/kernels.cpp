#include "mbs/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#ifdef MBS_HAVE_OPENMP
#include <omp.h>
#endif

namespace mbs {

using cplx = std::complex<double>;

int max_threads() {
#ifdef MBS_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

double DrivenGenerator::norm_bound() const {
  double row = 0.0;
  for (Eigen::Index i = 0; i < h0.rows(); ++i) row = std::max(row, h0.row(i).cwiseAbs().sum());
  const double d = drive.size() > 0 ? drive.cwiseAbs().maxCoeff() : 0.0;
  return row + std::abs(mu0) * d;
}

namespace {

const cplx kMinusI(0.0, -1.0);

// -i H(t) x
Eigen::MatrixXcd apply(const DrivenGenerator& g, double t, const Eigen::MatrixXcd& x) {
  Eigen::MatrixXcd hx = g.h0 * x;
  const double f = g.mu0 * std::cos(g.omega * t);
  if (f != 0.0) hx.noalias() += (f * g.drive).asDiagonal() * x;
  return kMinusI * hx;
}

void rk4_columns(const DrivenGenerator& g, double h, int substeps, int records, Eigen::Index col0,
                 Eigen::Index ncols, std::vector<Eigen::MatrixXcd>& out) {
  const Eigen::Index dim = g.h0.rows();
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Identity(dim, dim).middleCols(col0, ncols);
  out[0].middleCols(col0, ncols) = x;
  long step = 0;
  for (int r = 1; r <= records; ++r) {
    for (int s = 0; s < substeps; ++s, ++step) {
      const double t = step * h;
      const Eigen::MatrixXcd k1 = apply(g, t, x);
      const Eigen::MatrixXcd k2 = apply(g, t + 0.5 * h, x + (0.5 * h) * k1);
      const Eigen::MatrixXcd k3 = apply(g, t + 0.5 * h, x + (0.5 * h) * k2);
      const Eigen::MatrixXcd k4 = apply(g, t + h, x + h * k3);
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    out[r].middleCols(col0, ncols) = x;
  }
}

}  // namespace

std::vector<Eigen::MatrixXcd> rk4_propagators(const DrivenGenerator& g, double h, int substeps,
                                              int records, Exec exec) {
  const Eigen::Index dim = g.h0.rows();
  std::vector<Eigen::MatrixXcd> out(records + 1, Eigen::MatrixXcd(dim, dim));
  if (exec == Exec::serial || max_threads() == 1) {
    rk4_columns(g, h, substeps, records, 0, dim, out);
    return out;
  }
#ifdef MBS_HAVE_OPENMP
#pragma omp parallel
  {
    const int nt = omp_get_num_threads();
    const int id = omp_get_thread_num();
    const Eigen::Index begin = dim * id / nt;
    const Eigen::Index end = dim * (id + 1) / nt;
    if (end > begin) rk4_columns(g, h, substeps, records, begin, end - begin, out);
  }
#endif
  return out;
}

Eigen::MatrixXcd spectral_states(const Eigen::VectorXd& energies, const Eigen::MatrixXcd& vectors,
                                 const Eigen::VectorXcd& psi0, const std::vector<double>& times,
                                 Exec exec) {
  const Eigen::VectorXcd c = vectors.adjoint() * psi0;
  const long nt = static_cast<long>(times.size());
  Eigen::MatrixXcd out(psi0.size(), nt);
  auto one = [&](long j) {
    Eigen::VectorXcd phased(c.size());
    for (Eigen::Index k = 0; k < c.size(); ++k) phased(k) = c(k) * std::polar(1.0, -energies(k) * times[j]);
    out.col(j) = vectors * phased;
  };
  if (exec == Exec::serial) {
    for (long j = 0; j < nt; ++j) one(j);
  } else {
#pragma omp parallel for schedule(static)
    for (long j = 0; j < nt; ++j) one(j);
  }
  return out;
}

}  // namespace mbs
