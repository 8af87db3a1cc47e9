#ifndef WEYLBEC_WEYL_HPP
#define WEYLBEC_WEYL_HPP

#include <array>
#include <string>
#include <vector>

#include "weylbec/expr.hpp"

namespace weylbec {

/// A gap-closing point of the bulk model. kz is 0 where a = -1 and pi where
/// a = +1 (the two roots of a + e^{i kz} = 0 with b = 0).
struct WeylPoint {
  double kx = 0.0, ky = 0.0, kz = 0.0;
  int charge = 0;  // filled by the chern module
};

/// One point of pi(W) together with the indices of the Weyl points above it.
struct ProjectedGroup {
  double kx = 0.0, ky = 0.0;
  std::vector<int> members;
};

struct WeylSet {
  std::vector<WeylPoint> points;
  std::vector<ProjectedGroup> groups;  // sorted lexicographically by (kx, ky)

  bool empty() const { return points.empty(); }
};

/// Scan a grid_n x grid_n torus grid for sign-change cells of (a -+ 1, b),
/// Newton-refine each candidate to residual < 1e-12 using the symbolic
/// Jacobian, and deduplicate within torus distance 1e-6.
WeylSet detect_weyl_points(const SurfacePair& s, int grid_n = 512);

struct ClauseResult {
  bool passed = true;
  std::string detail;
  std::vector<std::array<double, 2>> witnesses;
};

/// Best-effort numerical check of the model assumptions at grid resolution;
/// never a proof. Records the tolerances it used.
struct AssumptionReport {
  ClauseResult finiteness;        // (a)
  ClauseResult jacobian_near_w;   // (b)
  ClauseResult regular_value;     // (c)
  ClauseResult base_point_found;  // (d)
  std::array<double, 2> base_point{0.0, 0.0};
  WeylSet weyl;
  int grid_n = 0;
  double neighbourhood_radius = 0.3;
  double tolerance = 1e-8;

  bool all_passed() const {
    return finiteness.passed && jacobian_near_w.passed && regular_value.passed &&
           base_point_found.passed;
  }
  /// First failed clause letter, or '\0' when everything passed.
  char failed_clause() const;
};

AssumptionReport check_assumptions(const SurfacePair& s, int grid_n = 512);

/// True when both grid lines through (kx0, ky0) stay clear of pi(W) by
/// `margin` and |det J| > tol at every Fermi-arc crossing of the lines.
bool base_point_admissible(const SurfacePair& s, const WeylSet& w, double kx0, double ky0,
                           double margin = 0.1, double tol = 1e-8);

}  // namespace weylbec

#endif
