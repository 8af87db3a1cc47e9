#include <doctest.h>

#include <cmath>
#include <numbers>

#include "weylbec/correspondence.hpp"
#include "weylbec/errors.hpp"
#include "weylbec/presets.hpp"
#include "weylbec/torus.hpp"

using namespace weylbec;

namespace {

constexpr double pi = std::numbers::pi;

struct Pipeline {
  SurfacePair s;
  WeylSet w;
  AssumptionReport report;
  BasisChoice basis;
  std::vector<FermiArcComponent> arcs;
};

Pipeline run_pipeline(const char* preset, int grid = 256, int samples = 720) {
  const auto p = find_preset(preset);
  REQUIRE(p.has_value());
  Pipeline out{p->surfaces(), {}, {}, {}, {}};
  out.report = check_assumptions(out.s, grid);
  REQUIRE(out.report.all_passed());
  out.w = out.report.weyl;
  out.basis = choose_basis(out.s, out.w, out.report, p->basis, samples);
  out.arcs = extract_fermi_arcs(out.s, out.w, grid);
  return out;
}

HomologyVector hv(int qx, int qy, std::vector<int> qi) { return {qx, qy, std::move(qi)}; }

}  // namespace

TEST_SUITE("correspondence") {

TEST_CASE("basis construction follows the documented choices") {
  Pipeline p = run_pipeline("example1");
  CHECK(p.basis.base_point[0] == 0.0);
  CHECK(p.basis.base_point[1] == 0.0);
  REQUIRE(p.basis.wbar.size() == 2);
  CHECK(torus_dist(p.basis.wbar[0][0], p.basis.wbar[0][1], pi / 2, pi) < 1e-9);
  CHECK(torus_dist(p.basis.wbar[1][0], p.basis.wbar[1][1], 3 * pi / 2, pi) < 1e-9);
  REQUIRE(p.basis.circles.size() == 1);
  CHECK(p.basis.radii[1] == doctest::Approx(0.3));

  // no Weyl points: only the two torus loops remain
  SurfacePair g = SurfacePair::parse("3", "sin(ky)");
  AssumptionReport rep = check_assumptions(g, 128);
  BasisChoice basis = choose_basis(g, rep.weyl, rep);
  CHECK(basis.wbar.empty());
  CHECK(basis.circles.empty());

  Pipeline p2 = run_pipeline("example2");
  REQUIRE(p2.basis.wbar.size() == 4);
  // the preset pins the paper's ordering, which is not lexicographic
  CHECK(torus_dist(p2.basis.wbar[0][0], p2.basis.wbar[0][1], pi / 2, 0.0) < 1e-9);
  CHECK(torus_dist(p2.basis.wbar[1][0], p2.basis.wbar[1][1], 3 * pi / 2, 0.0) < 1e-9);
  CHECK(torus_dist(p2.basis.wbar[2][0], p2.basis.wbar[2][1], pi / 2, pi) < 1e-9);
  CHECK(torus_dist(p2.basis.wbar[3][0], p2.basis.wbar[3][1], 3 * pi / 2, pi) < 1e-9);
  CHECK(p2.basis.circles.size() == 3);
}

TEST_CASE("an inadmissible base point is rejected") {
  Pipeline p = run_pipeline("example1");
  BasisOverrides bad;
  bad.base_point = {{pi / 2, 0.0}};  // on a Weyl column
  CHECK_THROWS_AS(choose_basis(p.s, p.w, p.report, bad), NoAdmissibleBasePoint);
}

TEST_CASE("edge coefficient vectors of the three examples") {
  Pipeline p1 = run_pipeline("example1");
  CHECK(edge_homology_vector(p1.s, p1.basis) == hv(0, 0, {1}));
  Pipeline p2 = run_pipeline("example2");
  CHECK(edge_homology_vector(p2.s, p2.basis) == hv(1, 0, {-1, 1, -1}));
  Pipeline p3 = run_pipeline("example3");
  CHECK(edge_homology_vector(p3.s, p3.basis) == hv(0, 0, {0, 1}));
}

TEST_CASE("edge vector is identical under both flow methods") {
  for (const char* name : {"example1", "example2", "example3"}) {
    CAPTURE(name);
    Pipeline p = run_pipeline(name);
    CHECK(edge_homology_vector(p.s, p.basis, FlowMethod::Analytic) ==
          edge_homology_vector(p.s, p.basis, FlowMethod::Numeric, 64));
  }
}

TEST_CASE("bulk coefficient vectors of the three examples") {
  Pipeline p1 = run_pipeline("example1");
  BulkModel m1 = BulkModel::local_form(p1.s);
  CHECK(bulk_homology_vector(m1, p1.basis) == hv(0, 0, {1}));
  Pipeline p2 = run_pipeline("example2");
  CHECK(bulk_homology_vector(BulkModel::local_form(p2.s), p2.basis) == hv(1, 0, {-1, 1, -1}));
  Pipeline p3 = run_pipeline("example3");
  CHECK(bulk_homology_vector(BulkModel::local_form(p3.s), p3.basis) == hv(0, 0, {0, 1}));

  // gapped model: both slice numbers vanish
  SurfacePair g = SurfacePair::parse("3", "sin(ky)");
  AssumptionReport rep = check_assumptions(g, 128);
  BasisChoice basis = choose_basis(g, rep.weyl, rep);
  CHECK(bulk_homology_vector(BulkModel::local_form(g), basis) == hv(0, 0, {}));
}

TEST_CASE("fermi coefficient vectors of the three examples") {
  Pipeline p1 = run_pipeline("example1");
  CHECK(fermi_homology_vector(p1.s, p1.arcs, p1.basis) == hv(0, 0, {1}));
  Pipeline p2 = run_pipeline("example2");
  CHECK(fermi_homology_vector(p2.s, p2.arcs, p2.basis) == hv(1, 0, {-1, 1, -1}));
  Pipeline p3 = run_pipeline("example3");
  CHECK(fermi_homology_vector(p3.s, p3.arcs, p3.basis) == hv(0, 0, {0, 1}));

  CHECK(fermi_homology_vector(p1.s, {}, p1.basis) == hv(0, 0, {0}));  // empty cycle
}

TEST_CASE("the alternate documented basis of example 1") {
  // basis 1: (0, 0) gives [a_1]; basis 2: ('kx0, 0) gives [a_x] + ['a_1];
  // the regression pins the two concrete coefficient vectors
  Pipeline p1 = run_pipeline("example1");
  Pipeline p2 = run_pipeline("example1-alt");
  CHECK(p2.basis.base_point[0] == doctest::Approx(3 * pi / 4));
  const HomologyVector v1 = edge_homology_vector(p1.s, p1.basis);
  const HomologyVector v2 = edge_homology_vector(p2.s, p2.basis);
  CHECK(v1 == hv(0, 0, {1}));
  CHECK(v2 == hv(1, 0, {1}));
  // bulk and fermi transform the same way
  CHECK(bulk_homology_vector(BulkModel::local_form(p2.s), p2.basis) == v2);
  CHECK(fermi_homology_vector(p2.s, p2.arcs, p2.basis) == v2);
}

TEST_CASE("halving the disc radii does not move any coefficient") {
  const auto preset = find_preset("example2");
  Pipeline p = run_pipeline("example2");
  BasisOverrides halved = preset->basis;
  halved.disc_radius = 0.15;
  BasisChoice small = choose_basis(p.s, p.w, p.report, halved);
  CHECK(edge_homology_vector(p.s, small) == edge_homology_vector(p.s, p.basis));
  CHECK(bulk_homology_vector(BulkModel::local_form(p.s), small) ==
        bulk_homology_vector(BulkModel::local_form(p.s), p.basis));
  CHECK(fermi_homology_vector(p.s, p.arcs, small) == fermi_homology_vector(p.s, p.arcs, p.basis));
}

TEST_CASE("verify_bec passes on the three examples") {
  for (const char* name : {"example1", "example2", "example3"}) {
    CAPTURE(name);
    const auto preset = find_preset(name);
    VerifyOptions opt;
    opt.grid_n = 256;
    opt.basis = preset->basis;
    BecReport rep = verify_bec(preset->surfaces(), opt);
    CHECK(rep.passed);
    CHECK(rep.bulk == rep.edge);
    CHECK(rep.edge == rep.fermi);
    CHECK(rep.charge_sum_zero);
    CHECK(rep.fiber_sums_match);
    CHECK(rep.fermi_arc_recovered);
    CHECK(rep.hausdorff < rep.hausdorff_bound);
  }
}

TEST_CASE("verify_bec is vacuous on a gapped model") {
  VerifyOptions opt;
  opt.grid_n = 128;
  BecReport rep = verify_bec(SurfacePair::parse("3", "sin(ky)"), opt);
  CHECK(rep.passed);
  CHECK(rep.bulk == hv(0, 0, {}));
  CHECK(rep.edge == hv(0, 0, {}));
  CHECK(rep.fermi == hv(0, 0, {}));
  CHECK(rep.arcs.empty());
}

TEST_CASE("verify_bec surfaces the failed clause") {
  VerifyOptions opt;
  opt.grid_n = 128;
  // the qwz surfaces depend on kx only, so det J vanishes identically and
  // clause (d) cannot hold
  try {
    verify_bec(find_preset("qwz:1:1.5")->surfaces(), opt);
    FAIL("expected AssumptionViolated");
  } catch (const AssumptionViolated& e) {
    CHECK(e.clause == 'd');
  }
}

TEST_CASE("numeric flow through the whole pipeline") {
  const auto preset = find_preset("example1");
  VerifyOptions opt;
  opt.grid_n = 256;
  opt.flow = FlowMethod::Numeric;
  opt.basis = preset->basis;
  BecReport rep = verify_bec(preset->surfaces(), opt);
  CHECK(rep.passed);
  CHECK(rep.edge == hv(0, 0, {1}));
}

}  // TEST_SUITE
