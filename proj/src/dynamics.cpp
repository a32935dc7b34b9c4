#include "mbs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/FFT>

namespace mbs {

using cplx = std::complex<double>;

StateVector initial_majorana_state(const ValidatedConfig& config, int site) {
  const int n = config.site_count();
  const int i = config.index_of(site);
  StateVector s;
  s.components = Eigen::VectorXcd::Zero(2 * n);
  s.components(i) = s.components(i + n) = 1.0 / std::sqrt(2.0);
  return s;
}

std::vector<double> uniform_times(double t_max, double dt) {
  if (!(dt > 0.0) || !(t_max >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "uniform_times needs dt > 0 and t_max >= 0");
  }
  const long count = static_cast<long>(std::floor(t_max / dt + 1e-9)) + 1;
  std::vector<double> t(count);
  for (long j = 0; j < count; ++j) t[j] = j * dt;
  return t;
}

namespace {

void fill_observables(EvolutionTrace& trace, const Eigen::VectorXcd& psi0, const Eigen::MatrixXcd& states,
                      bool populations) {
  const Eigen::Index n = psi0.size() / 2;
  const Eigen::Index nt = states.cols();
  trace.overlap.resize(nt);
  trace.norms.resize(nt);
  if (populations) trace.site_populations.resize(nt, n);
  for (Eigen::Index j = 0; j < nt; ++j) {
    const auto psi = states.col(j);
    trace.overlap[j] = std::min(1.0, std::norm(psi0.dot(psi)));
    trace.norms[j] = psi.norm();
    if (populations) {
      for (Eigen::Index i = 0; i < n; ++i) {
        trace.site_populations(j, i) = std::norm(psi(i)) + std::norm(psi(i + n));
      }
    }
  }
}

void check_times(const std::vector<double>& times) {
  if (times.empty() || times.front() != 0.0) {
    throw Error(ErrorKind::InvalidArgument, "times must start at 0");
  }
  if (!std::is_sorted(times.begin(), times.end())) {
    throw Error(ErrorKind::InvalidArgument, "times must be ascending");
  }
}

}  // namespace

EvolutionTrace evolve_static(const BdgMatrix& m, const StateVector& psi0, const std::vector<double>& times,
                             bool populations, Exec exec) {
  check_times(times);
  if (psi0.components.size() != m.dim()) {
    throw Error(ErrorKind::InvalidArgument, "state dimension does not match the BdG matrix");
  }
  const SpectrumResult s = diagonalize(m);
  EvolutionTrace trace;
  trace.times = times;
  if (m.source) trace.first_site = -m.source->left.length;
  fill_observables(trace, psi0.components,
                   spectral_states(s.eigenvalues, s.eigenvectors, psi0.components, times, exec), populations);
  return trace;
}

Eigen::MatrixXcd static_propagator(const SpectrumResult& s, double t) {
  Eigen::VectorXcd phases(s.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, -s.eigenvalues(k) * t);
  return s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint();
}

EvolutionTrace evolve_driven(const ValidatedConfig& config, const DriveParams& drive, const StateVector& psi0,
                             double t_max, double dt, const DrivenOptions& options) {
  if (!(drive.omega > 0.0)) throw Error(ErrorKind::InvalidArgument, "drive frequency must be positive");
  if (!(t_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_max must be positive");
  if (options.record_every < 1) throw Error(ErrorKind::InvalidArgument, "record_every must be >= 1");
  const double period = 2.0 * std::numbers::pi / drive.omega;
  if (!(dt > 0.0) || dt > period / 20.0 * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "dt = " << dt << " exceeds T/20 = " << period / 20.0 << " for omega = " << drive.omega;
    throw Error(ErrorKind::StepTooLarge, msg.str());
  }

  const BdgMatrix m = build_bdg(config);
  const int n = m.sites;
  if (psi0.components.size() != m.dim()) {
    throw Error(ErrorKind::InvalidArgument, "state dimension does not match the BdG matrix");
  }

  DrivenGenerator g;
  g.h0 = m.matrix;
  g.drive = Eigen::VectorXd::Zero(2 * n);
  const int c0 = config.index_of(0);
  const int c1 = config.index_of(config.center_bonds());
  for (int i = c0; i <= c1; ++i) {
    g.drive(i) = 1.0;
    g.drive(i + n) = -1.0;
  }
  g.mu0 = drive.mu0;
  g.omega = drive.omega;

  const int steps_per_period = static_cast<int>(std::ceil(period / dt - 1e-9));
  const double dt_eff = period / steps_per_period;
  int substeps = options.substeps;
  if (substeps <= 0) substeps = std::max(1, static_cast<int>(std::ceil(g.norm_bound() * dt_eff / 0.005)));
  const double h = dt_eff / substeps;

  const std::vector<Eigen::MatrixXcd> u = rk4_propagators(g, h, substeps, steps_per_period, options.exec);

  const long total = static_cast<long>(std::floor(t_max / dt_eff + 1e-9));
  const long stride = options.record_every;
  EvolutionTrace trace;
  trace.first_site = config.first_site();
  Eigen::MatrixXcd states(2 * n, total / stride + 1);
  Eigen::VectorXcd at_period = psi0.components;  // U_T^p psi0
  long period_index = 0;
  for (long j = 0, col = 0; j <= total; j += stride, ++col) {
    const long p = j / steps_per_period;
    while (period_index < p) {
      at_period = u.back() * at_period;
      ++period_index;
    }
    states.col(col) = u[j % steps_per_period] * at_period;
    trace.times.push_back(j * dt_eff);
  }
  fill_observables(trace, psi0.components, states, options.populations);

  for (std::size_t j = 0; j < trace.norms.size(); ++j) {
    if (std::abs(trace.norms[j] - 1.0) > 1e-6) {
      std::ostringstream msg;
      msg << "norm " << trace.norms[j] << " at t = " << trace.times[j] << " drifted beyond 1e-6";
      throw Error(ErrorKind::NormDrift, msg.str());
    }
  }
  return trace;
}

RabiEstimate extract_rabi_frequency(const EvolutionTrace& trace) {
  return extract_rabi_frequency(trace.times, trace.overlap);
}

RabiEstimate extract_rabi_frequency(const std::vector<double>& times, const std::vector<double>& signal) {
  const std::size_t count = signal.size();
  if (count < 16 || times.size() != count) {
    throw Error(ErrorKind::InvalidArgument, "need at least 16 matching time/overlap samples");
  }
  const double dt = (times.back() - times.front()) / (count - 1);
  for (std::size_t j = 1; j < count; ++j) {
    if (std::abs(times[j] - times[j - 1] - dt) > 1e-6 * dt) {
      throw Error(ErrorKind::InvalidArgument, "Rabi extraction needs uniformly spaced samples");
    }
  }

  double mean = 0.0;
  for (double s : signal) mean += s;
  mean /= count;

  constexpr int kPad = 4;
  std::size_t nfft = 1;
  while (nfft < kPad * count) nfft <<= 1;
  std::vector<double> windowed(nfft, 0.0);
  for (std::size_t j = 0; j < count; ++j) {
    const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * j / (count - 1));
    windowed[j] = (signal[j] - mean) * w;
  }
  Eigen::FFT<double> fft;
  std::vector<cplx> spectrum;
  fft.fwd(spectrum, windowed);
  const std::size_t half = nfft / 2;
  std::vector<double> mag(half + 1);
  for (std::size_t k = 0; k <= half; ++k) mag[k] = std::abs(spectrum[k]);

  // Skip the window main lobe around DC.
  const std::size_t lobe = 2 * nfft / count + 1;
  std::size_t peak = lobe;
  for (std::size_t k = lobe; k < half; ++k) {
    if (mag[k] > mag[peak]) peak = k;
  }
  double scale = 0.0;
  for (double s : signal) scale = std::max(scale, std::abs(s));
  if (!(mag[peak] > 1e-12 * std::max(1.0, scale) * count)) {
    throw Error(ErrorKind::NoOscillation, "overlap is flat; no spectral peak");
  }

  std::vector<double> background;
  background.reserve(half);
  for (std::size_t k = 1; k <= half; ++k) {
    if (k + lobe < peak || k > peak + lobe) background.push_back(mag[k]);
  }
  double median = 0.0;
  if (!background.empty()) {
    auto mid = background.begin() + background.size() / 2;
    std::nth_element(background.begin(), mid, background.end());
    median = *mid;
  }

  double offset = 0.0;
  if (peak > 0 && peak < half && mag[peak - 1] > 0.0 && mag[peak + 1] > 0.0) {
    const double a = std::log(mag[peak - 1]);
    const double b = std::log(mag[peak]);
    const double c = std::log(mag[peak + 1]);
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) offset = 0.5 * (a - c) / denom;
  }

  RabiEstimate est;
  est.omega_rabi = 2.0 * std::numbers::pi * (peak + offset) / (nfft * dt);
  est.confidence = median > 0.0 ? mag[peak] / median : std::numeric_limits<double>::infinity();

  std::ostringstream msg;
  msg << "peak-to-background " << est.confidence << " at omega = " << est.omega_rabi;
  if (est.confidence < 5.0) throw Error(ErrorKind::NoOscillation, msg.str());
  const double periods = est.omega_rabi * (times.back() - times.front()) / (2.0 * std::numbers::pi);
  if (est.confidence < 20.0) throw LowConfidenceError(est, msg.str());
  if (periods < 3.0) {
    msg << "; window spans only " << periods << " periods";
    throw LowConfidenceError(est, msg.str());
  }
  return est;
}

}  // namespace mbs
