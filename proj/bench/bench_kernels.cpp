// Serial reference vs OpenMP kernels: wall time and max deviation.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "mbs/bdg.hpp"
#include "mbs/dynamics.hpp"
#include "mbs/kernels.hpp"
#include "mbs/sweep.hpp"

using namespace mbs;

namespace {

ChainConfig chain(int center_sites) {
  ChainConfig c;
  c.left = {0.0, 5.0, 5.0, 5};
  c.center.base = {2.0, 1.0, 5.0, center_sites};
  c.right = {0.0, 5.0, 5.0, 4};
  c.junction.t1 = c.junction.t2 = 1.0;
  return c;
}

double seconds(const std::function<void()>& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void row(const char* name, double serial, double parallel, double diff) {
  std::printf("%-34s %10.4f %10.4f %8.2fx %10.2e\n", name, serial, parallel, serial / parallel, diff);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", max_threads());
  std::printf("%-34s %10s %10s %9s %10s\n", "kernel", "serial s", "omp s", "speedup", "max diff");

  for (int sites : {11, 41}) {
    const BdgMatrix m = build_bdg(validate(chain(sites)));
    DrivenGenerator g;
    g.h0 = m.matrix;
    g.drive = Eigen::VectorXd::Zero(m.dim());
    for (int i = 5; i < 5 + sites; ++i) {
      g.drive(i) = 1.0;
      g.drive(i + m.sites) = -1.0;
    }
    g.mu0 = 25.0;
    g.omega = 100.0;
    const double period = 2.0 * std::numbers::pi / g.omega;
    const int records = 40;
    const int sub = 25;
    const double h = period / (records * sub);
    std::vector<Eigen::MatrixXcd> a, b;
    const double ts = seconds([&] { a = rk4_propagators(g, h, sub, records, Exec::serial); }, 3);
    const double tp = seconds([&] { b = rk4_propagators(g, h, sub, records, Exec::parallel); }, 3);
    double diff = 0.0;
    for (int r = 0; r <= records; ++r) diff = std::max(diff, (a[r] - b[r]).cwiseAbs().maxCoeff());
    char name[64];
    std::snprintf(name, sizeof name, "rk4 period propagator (dim %d)", static_cast<int>(m.dim()));
    row(name, ts, tp, diff);

    const SpectrumResult s = diagonalize(m);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(m.dim());
    psi(4) = psi(4 + m.sites) = 1.0 / std::sqrt(2.0);
    const std::vector<double> times = uniform_times(4000.0, 0.5);
    Eigen::MatrixXcd x, y;
    const double ss = seconds([&] { x = spectral_states(s.eigenvalues, s.eigenvectors, psi, times, Exec::serial); }, 3);
    const double sp = seconds([&] { y = spectral_states(s.eigenvalues, s.eigenvectors, psi, times, Exec::parallel); }, 3);
    std::snprintf(name, sizeof name, "spectral states (dim %d)", static_cast<int>(m.dim()));
    row(name, ss, sp, (x - y).cwiseAbs().maxCoeff());
  }

  SweepSpec spec;
  spec.axis = {"center.mu", 2.0, 10.0, 33};
  spec.methods = {SweepMethod::numeric, SweepMethod::numeric_periodic, SweepMethod::eq12, SweepMethod::ksum};
  std::vector<SweepRow> ra, rb;
  const double ws = seconds([&] { ra = run_sweep(chain(31), spec, Exec::serial); }, 2);
  const double wp = seconds([&] { rb = run_sweep(chain(31), spec, Exec::parallel); }, 2);
  double diff = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    if (std::isfinite(ra[i].epsilon)) diff = std::max(diff, std::abs(ra[i].epsilon - rb[i].epsilon));
  }
  row("sweep 33 points x 4 methods", ws, wp, diff);
  return 0;
}
