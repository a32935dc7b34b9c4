#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "mbs/analytic.hpp"
#include "mbs/bdg.hpp"
#include "mbs/csv.hpp"
#include "mbs/errors.hpp"
#include "mbs/sweep.hpp"

using namespace mbs;
using doctest::Approx;

TEST_SUITE("sweep") {
  TEST_CASE("parameter paths") {
    ChainConfig c = fixtures::fig3(3.0, 10);
    set_parameter(c, "center.mu", 4.5);
    set_parameter(c, "junction.delta1+junction.delta2", 2.0);
    set_parameter(c, "center.length", 7);
    set_parameter(c, "center.t2", 0.25);
    CHECK(c.center.base.mu == 4.5);
    CHECK(c.junction.delta1 == 2.0);
    CHECK(c.junction.delta2 == 2.0);
    CHECK(c.center.base.length == 7);
    CHECK(c.center.t2 == 0.25);
    CHECK_THROWS_AS(set_parameter(c, "center.length", 7.5), Error);
    CHECK_THROWS_AS(set_parameter(c, "center.nope", 1.0), Error);
    CHECK_THROWS_AS(set_parameter(c, "mu", 1.0), Error);
  }

  TEST_CASE("linspace") {
    const std::vector<double> v = linspace({"center.mu", 2.0, 10.0, 17});
    REQUIRE(v.size() == 17);
    CHECK(v.front() == 2.0);
    CHECK(v.back() == 10.0);
    CHECK(v[1] == Approx(2.5));
    CHECK_THROWS_AS(linspace({"center.mu", 2.0, 2.0, 5}), Error);
    CHECK_THROWS_AS(linspace({"center.mu", 2.0, 3.0, 1}), Error);
  }

  TEST_CASE("rows follow the spec order") {
    SweepSpec spec;
    spec.axis = {"center.mu", 2.0, 10.0, 17};
    spec.methods = {SweepMethod::numeric, SweepMethod::eq12};
    const std::vector<SweepRow> rows = run_sweep(fixtures::fig3(2.0, 10), spec);
    REQUIRE(rows.size() == 34);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].method == spec.methods[i % 2]);
      CHECK(rows[i].value == Approx(2.0 + 0.5 * (i / 2)));
      CHECK(rows[i].error.empty());
    }
    CHECK(rows[6].epsilon == Approx(numeric_coupling(fixtures::fig3(3.5, 10))).epsilon(1e-12));
    CHECK(rows[7].epsilon ==
          Approx(lattice_prediction(fixtures::fig3(3.5, 10), CouplingMethod::eq12).epsilon).epsilon(1e-12));
  }

  TEST_CASE("failures become nan rows") {
    ChainConfig c = fixtures::fig3(3.0, 10);
    c.center.base.delta = 0.5;
    const SweepRow r = evaluate_point(c, SweepMethod::eq12);
    CHECK(std::isnan(r.epsilon));
    CHECK(r.error == "DomainError");
    SweepSpec spec;
    spec.axis = {"center.delta", 0.5, 5.0, 4};
    spec.methods = {SweepMethod::eq12};
    const std::string csv = sweep_csv(spec, run_sweep(c, spec));
    CHECK(csv.find("nan") != std::string::npos);
    CHECK(csv.rfind("sweep_param,value,method,epsilon,coherence_length,error\n", 0) == 0);
  }

  TEST_CASE("grid mode has its minimum at the origin") {
    SweepSpec spec;
    spec.axis = {"center.t2", 0.0, 1.0, 5};
    spec.second = SweepAxis{"center.delta2", 0.0, 1.0, 5};
    spec.methods = {SweepMethod::numeric, SweepMethod::longrange};
    const std::vector<SweepRow> rows = run_sweep(fixtures::fig3(2.0, 10), spec);
    REQUIRE(rows.size() == 50);
    for (SweepMethod m : spec.methods) {
      const SweepRow* best = nullptr;
      for (const SweepRow& r : rows)
        if (r.method == m && (!best || r.epsilon < best->epsilon)) best = &r;
      REQUIRE(best);
      CHECK(best->value == 0.0);
      CHECK(best->value2 == 0.0);
    }
    CHECK(sweep_csv(spec, rows).rfind("sweep_param,value,sweep_param2,value2,method", 0) == 0);
  }

  TEST_CASE("serial and parallel sweeps are identical") {
    SweepSpec spec;
    spec.axis = {"center.mu", 2.0, 10.0, 9};
    spec.methods = {SweepMethod::numeric, SweepMethod::numeric_periodic, SweepMethod::longrange, SweepMethod::ksum};
    const ChainConfig base = fixtures::fig3(2.0, 10);
    CHECK(sweep_csv(spec, run_sweep(base, spec, Exec::serial)) ==
          sweep_csv(spec, run_sweep(base, spec, Exec::parallel)));
  }

  TEST_CASE("number formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0 / 3.0) == "0.333333333333");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(-INFINITY) == "-inf");
    CHECK(round12(1.0 / 3.0) == 0.333333333333);
  }

  TEST_CASE("csv emitters") {
    const ValidatedConfig v = validate(fixtures::fig3(3.0, 2));
    const SpectrumResult s = diagonalize(build_bdg(v));
    std::ostringstream out;
    write_spectrum_csv(out, s);
    CHECK(out.str().rfind("index,eigenvalue\n0,", 0) == 0);
    std::ostringstream modes;
    write_modes_csv(modes, majorana_wavefunctions(s), v.first_site());
    CHECK(modes.str().rfind("site,weight,mode_id\n-5,", 0) == 0);
  }
}
