#include <doctest.h>

#include <cmath>
#include <numbers>

#include "weylbec/chern.hpp"
#include "weylbec/edge.hpp"
#include "weylbec/errors.hpp"
#include "weylbec/presets.hpp"

using namespace weylbec;

namespace {

constexpr double pi = std::numbers::pi;

ClosedSurfaceGrid qwz_torus(int n, double u, int grid = 100) {
  return ClosedSurfaceGrid::torus(
      grid, grid, [n, u](double kx, double ky) { return qwz_hamiltonian(n, u, kx, ky); },
      "qwz torus");
}

}  // namespace

TEST_SUITE("chern") {

TEST_CASE("constant Hamiltonian carries the trivial bundle") {
  auto g = ClosedSurfaceGrid::torus(
      32, 32, [](double, double) { return Hermitian2{1.0, 0.0, 0.0}; }, "constant");
  CHECK(fhs_chern(g) == 0);
}

TEST_CASE("qwz Chern numbers") {
  CHECK(fhs_chern(qwz_torus(1, 1.0)) == 1);
  CHECK(fhs_chern(qwz_torus(-2, 1.5)) == -2);
  CHECK(fhs_chern(qwz_torus(3, 0.5)) == 3);
}

TEST_CASE("plaquette sums sit on integers and survive grid doubling") {
  auto coarse = fhs_chern_detailed(qwz_torus(2, 1.5, 100));
  auto fine = fhs_chern_detailed(qwz_torus(2, 1.5, 200));
  CHECK(coarse.chern == fine.chern);
  CHECK(coarse.residual < 1e-9);
  CHECK(fine.residual < 1e-9);
  CHECK(coarse.min_gap > 0.1);
}

TEST_CASE("a closed gap is reported, not integrated over") {
  CHECK_THROWS_AS(fhs_chern(qwz_torus(1, 0.0)), GapClosed);
  CHECK_THROWS_AS(fhs_chern(qwz_torus(1, 2.0)), GapClosed);
}

TEST_CASE("tube Chern numbers around projected Weyl points") {
  BulkModel ex1 = BulkModel::local_form(find_preset("example1")->surfaces());
  CHECK(chern_tube(ex1, {3 * pi / 2, pi}, 0.3) == -1);
  CHECK(chern_tube(ex1, {0.0, 0.0}, 0.3) == 0);  // contractible gapped family

  BulkModel ex2 = BulkModel::local_form(find_preset("example2")->surfaces());
  CHECK(chern_tube(ex2, {pi / 2, pi}, 0.3) == -1);
}

TEST_CASE("sphere charges: example 1") {
  BulkModel m = BulkModel::local_form(find_preset("example1")->surfaces());
  // both Weyl points of example 1 sit in the kz = pi fiber (a = +1 there)
  const int q0 = chern_sphere(m, {pi / 2, pi, pi, 0}, 0.2);
  const int q1 = chern_sphere(m, {3 * pi / 2, pi, pi, 0}, 0.2);
  CHECK(q0 + q1 == 0);
  CHECK(q1 == -1);  // equal to the tube number around its projection
}

TEST_CASE("sphere around a gapped point is trivial") {
  BulkModel m = BulkModel::local_form(find_preset("example1")->surfaces());
  CHECK(chern_sphere(m, {0.0, 0.0, 0.0, 0}, 0.2) == 0);
}

TEST_CASE("charge conservation and fiber sums on all examples") {
  for (const char* name : {"example1", "example2", "example3"}) {
    CAPTURE(name);
    SurfacePair s = find_preset(name)->surfaces();
    BulkModel m = BulkModel::local_form(s);
    WeylSet w = detect_weyl_points(s, 256);
    int total = 0;
    for (auto& p : w.points) {
      p.charge = chern_sphere(m, p, 0.2);
      total += p.charge;
    }
    CHECK(total == 0);
    for (const auto& g : w.groups) {
      int fiber = 0;
      for (int idx : g.members) fiber += w.points[idx].charge;
      CHECK(fiber == chern_tube(m, {g.kx, g.ky}, 0.3));
    }
  }
}

TEST_CASE("slice Chern number equals minus the spectral flow of the slice loop") {
  // c1 = -sf instance checked surface by surface, with both flow oracles
  struct Case {
    const char* name;
    double kx0;
  };
  for (const Case& c : {Case{"example1", 3 * pi / 4}, Case{"example1", 0.0},
                        Case{"example2", pi / 4}, Case{"example3", 0.5}}) {
    CAPTURE(c.name);
    CAPTURE(c.kx0);
    SurfacePair s = find_preset(c.name)->surfaces();
    BulkModel m = BulkModel::local_form(s);
    const int c1 = fhs_chern(ClosedSurfaceGrid::slice_x(m, c.kx0, 200));
    Loop loop = Loop::vertical(s, c.kx0, 720);
    CHECK(c1 == -spectral_flow_analytic(s, loop));
    CHECK(c1 == -spectral_flow_numeric(loop, 64));
  }
}

}  // TEST_SUITE
