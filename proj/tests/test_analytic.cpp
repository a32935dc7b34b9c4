#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "mbs/analytic.hpp"
#include "mbs/bdg.hpp"
#include "mbs/errors.hpp"

using namespace mbs;
using doctest::Approx;

namespace {

CenterParams centre(double mu, double t, double delta) {
  CenterParams c;
  c.base = {mu, t, delta, 2};
  return c;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an mbs::Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_SUITE("analytic") {
  TEST_CASE("bulk spectrum") {
    const BulkSpectrumPoint a = bulk_spectrum(centre(3.0, 1.0, 5.0), 0.0);
    CHECK(a.E == Approx(2.0));
    CHECK(a.u == Approx(1.0));
    CHECK(a.v == Approx(0.0));
    const BulkSpectrumPoint b = bulk_spectrum(centre(3.0, 1.0, 5.0), std::numbers::pi / 2);
    CHECK(b.E == Approx(std::sqrt(34.0)).epsilon(1e-12));
    for (double k = 0.1; k < 6.3; k += 0.37) {
      const BulkSpectrumPoint p = bulk_spectrum(centre(2.0, 1.0, 0.7), k);
      CHECK(p.u * p.u + p.v * p.v == Approx(1.0).epsilon(1e-12));
      CHECK(p.E >= 0.0);
    }
    CHECK(kind_of([] { bulk_spectrum(centre(1.0, 1.0, 0.0), 0.0); }) == ErrorKind::GaplessPoint);
    CenterParams nn = centre(3.0, 1.0, 5.0);
    nn.t2 = 0.5;
    CHECK(kind_of([&] { bulk_spectrum(nn, 0.3); }) == ErrorKind::InvalidArgument);
  }

  TEST_CASE("coherence length") {
    CHECK(coherence_length(3.0, 1.0, 5.0) == Approx(1.0 / std::log(4.0 / (std::sqrt(33.0) - 3.0))).epsilon(1e-14));
    CHECK(coherence_length(3.0, 1.0, 5.0) == Approx(2.6548).epsilon(1e-4));
    CHECK(coherence_length(5.0, 1.0, 5.0) == Approx(1.0 / std::log(2.0)).epsilon(1e-14));
    CHECK(kind_of([] { coherence_length(3.0, 1.0, 1.0); }) == ErrorKind::DomainError);
    CHECK(kind_of([] { coherence_length(3.0, 1.0, 0.5); }) == ErrorKind::DomainError);
    try {
      coherence_length(3.0, 2.0, 1.0);
    } catch (const Error& e) {
      CHECK(e.message().find("delta_c > t_c") != std::string::npos);
    }
    double previous = 0.0;
    for (double d : {2.0, 3.0, 5.0, 8.0, 10.0}) {
      const double xi = coherence_length(3.0, 1.0, d);
      CHECK(xi > previous);
      previous = xi;
    }
  }

  TEST_CASE("eq12 values") {
    const CenterParams c = centre(3.0, 1.0, 5.0);
    const double xi = 1.0 / std::log(4.0 / (std::sqrt(33.0) - 3.0));
    const double e5 = std::exp(-5.0 / xi) / std::sqrt(33.0);
    CHECK(coupling_eq12(1.0, 1.0, c, 5).epsilon == Approx(e5).epsilon(1e-13));
    CHECK(coupling_eq12(1.0, 1.0, c, 5).epsilon == Approx(0.02646).epsilon(2e-4));
    CHECK(coupling_eq12(1.0, 1.0, c, 10).epsilon == Approx(0.004025).epsilon(2e-4));
    CHECK(coupling_eq12(1.0, 1.0, c, 10).epsilon / coupling_eq12(1.0, 1.0, c, 5).epsilon ==
          Approx(0.1521).epsilon(5e-4));
    CHECK(coupling_eq12(0.0, 1.0, c, 5).epsilon == 0.0);
    CHECK(coupling_eq12(1.0, 1.0, c, 5).coherence_length.value() == Approx(xi));
    CHECK(kind_of([&] { coupling_eq12(1.0, 1.0, c, 0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { coupling_eq12(1.0, 1.0, centre(3.0, 1.0, 0.5), 5); }) == ErrorKind::DomainError);
  }

  TEST_CASE("eq12 monotonicity") {
    double previous = 1.0;
    for (int n = 1; n <= 20; ++n) {
      const double e = coupling_eq12(1.0, 1.0, centre(3.0, 1.0, 5.0), n).epsilon;
      CHECK(e < previous);
      previous = e;
    }
    previous = 1.0;
    for (double mu = 2.0; mu <= 10.0; mu += 0.5) {
      const double e = coupling_eq12(1.0, 1.0, centre(mu, 1.0, 5.0), 10).epsilon;
      CHECK(e < previous);
      previous = e;
    }
    previous = 0.0;
    for (double d = 2.0; d <= 10.0; d += 0.5) {
      const double e = coupling_eq12(1.0, 1.0, centre(3.0, 1.0, d), 10).epsilon;
      CHECK(e > previous);
      previous = e;
    }
  }

  TEST_CASE("boundary pairing") {
    const CenterParams c = centre(3.0, 1.0, 5.0);
    const double base = coupling_eq12(1.0, 1.0, c, 5).epsilon;
    JunctionParams j{1.0, 1.0, 0.0, 0.0, 0.0, 0.0};
    CHECK(coupling_boundary_pairing(j, c, 5).epsilon == Approx(base));
    j.delta1 = j.delta2 = 5.0;
    CHECK(coupling_boundary_pairing(j, c, 5).epsilon == Approx(36.0 * base));
    CHECK(coupling_boundary_pairing(j, c, 5).epsilon == Approx(0.9527).epsilon(5e-4));
    j.delta1 = j.delta2 = 1.0;
    CHECK(coupling_boundary_pairing(j, c, 5).epsilon == Approx(0.1059).epsilon(5e-4));
  }

  TEST_CASE("quartic z^4 - 1") {
    const QuarticRoots q = solve_quartic({1.0, 0.0, 0.0, 0.0, -1.0});
    CHECK(q.finite == 4);
    CHECK(q.inside_unit_circle.empty());
    const std::complex<double> expect[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (auto z : expect) {
      double best = 1.0;
      for (auto r : q.roots) best = std::min(best, std::abs(r - z));
      CHECK(best <= 1e-12);
    }
  }

  TEST_CASE("nearest-neighbour centre gives a cubic") {
    const QuarticRoots q = quartic_roots(centre(3.0, 1.0, 5.0));
    CHECK(q.finite == 3);
    CHECK(std::isinf(q.roots[3].real()));
    // roots of z (4 z^2 + 6 z - 6): 0, (-3 +- sqrt(33)) / 4
    REQUIRE(q.inside_unit_circle.size() == 2);
    const double decaying = (std::sqrt(33.0) - 3.0) / 4.0;
    CHECK(std::abs(q.roots[q.inside_unit_circle[1]]) == Approx(decaying).epsilon(1e-12));
    CHECK(decaying == Approx(std::exp(-1.0 / coherence_length(3.0, 1.0, 5.0))).epsilon(1e-12));
    CHECK(decaying == Approx(0.6862).epsilon(1e-4));
  }

  TEST_CASE("quartic residual on random coefficients") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
      const QuarticRoots q = solve_quartic({u(rng), u(rng), u(rng), u(rng), u(rng)});
      CHECK(q.residual <= 1e-9);
    }
  }

  TEST_CASE("degenerate and boundary roots") {
    // (z - 0.5)^2 (z + 2)(z - 3) = z^4 - 2 z^3 - 4.75 z^2 + 5.75 z - 1.5
    CHECK(kind_of([] { solve_quartic({1.0, -2.0, -4.75, 5.75, -1.5}); }) == ErrorKind::DegenerateRoots);
    // mu = t: z = 1 is a root
    JunctionParams j{1.0, 1.0, 0.0, 0.0, 0.0, 0.0};
    CHECK(kind_of([&] { coupling_longrange(j, centre(1.0, 1.0, 5.0), 5); }) == ErrorKind::BoundaryRoot);
    CHECK(kind_of([] { solve_quartic({0.0, 0.0, 0.0, 0.0, 0.0}); }) == ErrorKind::InvalidArgument);
  }

  TEST_CASE("residue formula reduces to eq12") {
    const JunctionParams j{1.0, 1.0, 0.0, 0.0, 0.0, 0.0};
    for (int n : {5, 10, 15}) {
      for (double mu : {5.0, 6.0, 8.0, 10.0}) {
        const CenterParams c = centre(mu, 1.0, 5.0);
        const double lr = coupling_longrange(j, c, n).epsilon;
        const double eq = coupling_eq12(1.0, 1.0, c, n).epsilon;
        CHECK(std::abs(lr - eq) / eq <= 0.05);
      }
    }
  }

  TEST_CASE("long-range tie") {
    double previous = 1.0;
    for (double mu : {3.0, 5.0, 8.0, 10.0}) {
      const double e = lattice_prediction(fixtures::fig6(mu), CouplingMethod::longrange_residue).epsilon;
      CHECK(e < previous);
      previous = e;
    }
    const ChainConfig c = fixtures::fig6(10.0);
    const double lr = lattice_prediction(c, CouplingMethod::longrange_residue).epsilon;
    CHECK(std::abs(lr - numeric_coupling(c)) / numeric_coupling(c) <= 0.25);
  }

  TEST_CASE("long-range grid minimum at the origin") {
    double best = 1e300;
    double at_t = -1, at_d = -1;
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; b <= 4; ++b) {
        ChainConfig c = fixtures::fig3(2.0, 10);
        c.center.t2 = 0.25 * a;
        c.center.delta2 = 0.25 * b;
        // t2 = 1 closes the gap at k = 0 (mu = t + t2)
        if (a == 4) {
          CHECK_THROWS_AS(lattice_prediction(c, CouplingMethod::longrange_residue), Error);
          continue;
        }
        const double e = lattice_prediction(c, CouplingMethod::longrange_residue).epsilon;
        if (e < best) {
          best = e;
          at_t = c.center.t2;
          at_d = c.center.delta2;
        }
      }
    CHECK(at_t == 0.0);
    CHECK(at_d == 0.0);
  }

  TEST_CASE("momentum sum") {
    const CenterParams c = centre(5.0, 1.0, 5.0);
    const JunctionParams j{1.0, 1.0, 0.0, 0.0, 0.0, 0.0};
    const CouplingEstimate k = sw_coupling_ksum(j, c, 10);
    CHECK(k.imag_ratio <= 1e-10);
    CHECK(std::abs(k.epsilon - coupling_eq12(1.0, 1.0, c, 10).epsilon) / coupling_eq12(1.0, 1.0, c, 10).epsilon <=
          0.15);
    const JunctionParams off{0.0, 1.0, 0.0, 0.0, 0.0, 0.0};
    CHECK(sw_coupling_ksum(off, c, 10).epsilon == 0.0);
    // the calibration point reproduces eq12 by construction
    CenterParams ref = centre(8.0, 1.0, 5.0);
    CHECK(sw_coupling_ksum(j, ref, 12).epsilon == Approx(coupling_eq12(1.0, 1.0, ref, 12).epsilon).epsilon(1e-12));
  }

  TEST_CASE("lattice prediction halves junction amplitudes") {
    const ChainConfig c = fixtures::fig3(4.0, 7);
    CHECK(lattice_prediction(c, CouplingMethod::eq12).epsilon ==
          Approx(coupling_eq12(0.5, 0.5, c.center, 7).epsilon));
    ChainConfig p = c;
    p.junction.delta1 = p.junction.delta2 = 5.0;
    const CouplingEstimate e = lattice_prediction(p, CouplingMethod::eq12);
    CHECK(e.method == CouplingMethod::eq12_boundary_pairing);
    CHECK(e.epsilon == Approx(coupling_eq12(3.0, 3.0, c.center, 7).epsilon));
  }
}
