#ifndef WEYLBEC_CORRESPONDENCE_HPP
#define WEYLBEC_CORRESPONDENCE_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "weylbec/chern.hpp"
#include "weylbec/edge.hpp"
#include "weylbec/expr.hpp"
#include "weylbec/fermiarc.hpp"
#include "weylbec/weyl.hpp"

namespace weylbec {

struct BasisOverrides {
  std::optional<std::array<double, 2>> base_point;
  /// Coordinates fixing the order of the projected Weyl points; each entry
  /// must match a detected point within 0.1. The first entry is wbar_0.
  std::optional<std::vector<std::array<double, 2>>> wbar_order;
  std::optional<double> disc_radius;
};

/// The concrete loops pairing with the homology basis {[a_x], [a_y], [a_i]}:
/// the two coordinate lines through the base point and the anticlockwise
/// circles around wbar_1 .. wbar_{n-1}.
struct BasisChoice {
  std::array<double, 2> base_point{0.0, 0.0};
  std::vector<std::array<double, 2>> wbar;  // ordered; wbar[0] is the path basepoint
  std::vector<double> radii;                // one disc radius per wbar entry
  int loop_samples = 720;
  Loop loop_x;                // S^1 x {ky0}
  Loop loop_y;                // {kx0} x S^1
  std::vector<Loop> circles;  // circles[i-1] around wbar[i], i = 1..n-1

  int n_groups() const { return static_cast<int>(wbar.size()); }
};

BasisChoice choose_basis(const SurfacePair& s, const WeylSet& w, const AssumptionReport& report,
                         const BasisOverrides& overrides = {}, int loop_samples = 720);

/// Integer coefficients (q_x, q_y, q_1 .. q_{n-1}) of a class in
/// H_1(T^2, pi(W)) with respect to a BasisChoice.
struct HomologyVector {
  int qx = 0, qy = 0;
  std::vector<int> qi;

  bool operator==(const HomologyVector&) const = default;
  std::string str() const;
};

enum class FlowMethod { Analytic, Numeric };

/// Edge index: q_x = -sf over {kx0} x S^1, q_y = +sf over S^1 x {ky0},
/// q_i = +sf over the anticlockwise circle at wbar_i.
HomologyVector edge_homology_vector(const SurfacePair& s, const BasisChoice& basis,
                                    FlowMethod method = FlowMethod::Analytic, int n_sites = 64);

/// Push-forward of the Poincare dual of c1: q_x = +c1 of the kx0 slice,
/// q_y = -c1 of the ky0 slice, q_i = -c1 of the tube at wbar_i.
HomologyVector bulk_homology_vector(const BulkModel& m, const BasisChoice& basis,
                                    int chern_grid = 200);

/// Class of the Fermi cycle: each component enters with weight -epsilon and
/// coefficients (I(f, loop_y), -I(f, loop_x), -I(f, circle_i)). Tangential
/// crossings are retried with jittered loops (shift <= 0.02, 5 attempts).
HomologyVector fermi_homology_vector(const SurfacePair& s,
                                     const std::vector<FermiArcComponent>& components,
                                     const BasisChoice& basis);

struct VerifyOptions {
  int grid_n = 512;
  int chern_grid = 200;
  int n_sites = 64;
  int loop_samples = 720;
  FlowMethod flow = FlowMethod::Analytic;
  BasisOverrides basis;
};

struct BecReport {
  AssumptionReport assumptions;
  WeylSet weyl;  // charges filled from sphere Chern numbers
  BasisChoice basis;
  std::vector<FermiArcComponent> arcs;

  HomologyVector bulk, edge, fermi;
  bool bulk_edge_equal = false;
  bool edge_fermi_equal = false;
  bool charge_sum_zero = false;
  bool fiber_sums_match = false;      // sum of charges over a fiber vs tube c1
  std::vector<int> tube_chern;        // per group
  double sphere_radius = 0.0;
  double hausdorff = 0.0;             // d_H(arcs U pi(W), dense sample of F)
  double hausdorff_bound = 0.0;       // 2 grid cells
  bool fermi_arc_recovered = false;
  bool passed = false;

  std::string verdict() const { return passed ? "pass" : "fail"; }
};

/// Full pipeline: assumptions, Weyl points and charges, basis, the three
/// coefficient vectors, and the Fermi-arc recovery check.
BecReport verify_bec(const SurfacePair& s, const VerifyOptions& options = {});

}  // namespace weylbec

#endif
