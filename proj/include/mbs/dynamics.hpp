#pragma once
// Single-particle Schroedinger evolution in the BdG basis.

#include <vector>

#include <Eigen/Dense>

#include "mbs/bdg.hpp"
#include "mbs/chain.hpp"
#include "mbs/errors.hpp"
#include "mbs/kernels.hpp"

namespace mbs {

struct StateVector {
  Eigen::VectorXcd components;  // length 2 * sites, basis A
};

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<double> overlap;  // |<psi0|psi(t)>|^2
  std::vector<double> norms;
  Eigen::MatrixXd site_populations;  // rows = times, cols = sites; empty unless requested
  int first_site = 0;                // label of column 0
};

struct RabiEstimate {
  double omega_rabi = 0.0;
  double confidence = 0.0;
};

/// Thrown by extract_rabi_frequency when the peak is real but weak; the
/// estimate is still available.
class LowConfidenceError : public Error {
 public:
  LowConfidenceError(RabiEstimate estimate, const std::string& message)
      : Error(ErrorKind::LowConfidence, message), estimate_(estimate) {}
  const RabiEstimate& estimate() const noexcept { return estimate_; }

 private:
  RabiEstimate estimate_;
};

/// (a_site + a_site^dag) / sqrt(2). Throws SiteOutOfRange.
StateVector initial_majorana_state(const ValidatedConfig& config, int site);

/// 0, dt, 2 dt, ... up to t_max inclusive (within rounding).
std::vector<double> uniform_times(double t_max, double dt);

/// Exact evolution through the eigendecomposition of the BdG matrix.
EvolutionTrace evolve_static(const BdgMatrix& m, const StateVector& psi0, const std::vector<double>& times,
                             bool populations = false, Exec exec = Exec::parallel);

/// exp(-i H t) for a diagonalised BdG matrix.
Eigen::MatrixXcd static_propagator(const SpectrumResult& s, double t);

struct DrivenOptions {
  int record_every = 1;  // keep every k-th step
  int substeps = 0;      // RK4 steps per dt; 0 picks ||H|| h <= 0.005
  bool populations = false;
  Exec exec = Exec::parallel;
};

/// Drive mu0 cos(omega t) on the central sites 0..N. dt is snapped down to
/// T/M with T = 2 pi / omega; the one-period propagators are built once by
/// RK4 and reused for every later period.
/// Throws StepTooLarge when dt > T/20 and NormDrift when |norm - 1| > 1e-6.
EvolutionTrace evolve_driven(const ValidatedConfig& config, const DriveParams& drive, const StateVector& psi0,
                             double t_max, double dt, const DrivenOptions& options = {});

/// Dominant angular frequency of overlap(t): Hann window, zero-padded FFT,
/// log-parabolic peak refinement. confidence = peak / median spectrum.
/// Throws NoOscillation (< 5), LowConfidenceError (< 20 or < 3 periods).
RabiEstimate extract_rabi_frequency(const EvolutionTrace& trace);
RabiEstimate extract_rabi_frequency(const std::vector<double>& times, const std::vector<double>& signal);

}  // namespace mbs
