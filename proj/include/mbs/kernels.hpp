#pragma once
// Numerical kernels with a serial reference and an OpenMP variant. Both
// execution modes run the same per-column arithmetic; results agree to
// rounding.

#include <vector>

#include <Eigen/Dense>

namespace mbs {

enum class Exec { serial, parallel };

/// H(t) = h0 + mu0 cos(omega t) diag(drive).
struct DrivenGenerator {
  Eigen::MatrixXcd h0;
  Eigen::VectorXd drive;
  double mu0 = 0.0;
  double omega = 1.0;

  /// Gershgorin bound on max_t ||H(t)||.
  double norm_bound() const;
};

/// Classical RK4 for dX/dt = -i H(t) X, started at X = identity. Returns the
/// propagators after 0, 1, ..., records blocks of `substeps` steps of size h.
/// Columns are independent, so the parallel variant splits them across
/// threads without synchronising between steps.
std::vector<Eigen::MatrixXcd> rk4_propagators(const DrivenGenerator& g, double h, int substeps,
                                              int records, Exec exec);

/// psi(t) = V exp(-i E t) V^dag psi0 for every t; one column per time.
Eigen::MatrixXcd spectral_states(const Eigen::VectorXd& energies, const Eigen::MatrixXcd& vectors,
                                 const Eigen::VectorXcd& psi0, const std::vector<double>& times,
                                 Exec exec);

int max_threads();

}  // namespace mbs
