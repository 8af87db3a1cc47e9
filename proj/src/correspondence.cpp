#include "weylbec/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "weylbec/errors.hpp"
#include "weylbec/torus.hpp"

namespace weylbec {

namespace {

constexpr double kDetJTolerance = 1e-8;
constexpr double kWbarMatchRadius = 0.1;

double min_pairwise_group_dist(const WeylSet& w) {
  double d = std::numbers::pi;
  for (std::size_t i = 0; i < w.groups.size(); ++i)
    for (std::size_t j = i + 1; j < w.groups.size(); ++j)
      d = std::min(d, torus_dist(w.groups[i].kx, w.groups[i].ky, w.groups[j].kx, w.groups[j].ky));
  return d;
}

// |det J| at the Fermi-arc crossings of a loop (zeros of b with |a| < 1).
void require_detj_on_crossings(const SurfacePair& s, const Loop& loop) {
  const int m = loop.loop_samples();
  for (int i = 0; i < m; ++i) {
    const auto& p = loop.pts[i];
    const auto& q = loop.pts[i + 1];
    if (p.b == 0.0 || (p.b < 0) == (q.b < 0)) continue;
    double lo = 0.0, hi = 1.0, flo = p.b;
    for (int k = 0; k < 60; ++k) {
      const double mid = 0.5 * (lo + hi);
      const double fm = s.b_at(p.kx + mid * (q.kx - p.kx), p.ky + mid * (q.ky - p.ky));
      if ((fm < 0) == (flo < 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    const double t = 0.5 * (lo + hi);
    const double zx = p.kx + t * (q.kx - p.kx), zy = p.ky + t * (q.ky - p.ky);
    if (std::abs(s.a_at(zx, zy)) < 1.0 && std::abs(s.det_j_at(zx, zy)) <= kDetJTolerance)
      throw ConfigError("det J vanishes where " + loop.label + " crosses the Fermi arc");
  }
}

}  // namespace

std::string HomologyVector::str() const {
  std::string out = "(" + std::to_string(qx) + ", " + std::to_string(qy);
  for (int q : qi) out += ", " + std::to_string(q);
  return out + ")";
}

BasisChoice choose_basis(const SurfacePair& s, const WeylSet& w, const AssumptionReport& report,
                         const BasisOverrides& overrides, int loop_samples) {
  BasisChoice basis;
  basis.loop_samples = loop_samples;
  basis.base_point = overrides.base_point.value_or(report.base_point);
  if (!base_point_admissible(s, w, basis.base_point[0], basis.base_point[1]))
    throw NoAdmissibleBasePoint("base point (" + std::to_string(basis.base_point[0]) + ", " +
                                std::to_string(basis.base_point[1]) +
                                ") fails the clearance or det J conditions");

  // Order of the projected points: detection order (lexicographic) unless
  // the caller pins a different one.
  if (overrides.wbar_order) {
    const auto& order = *overrides.wbar_order;
    if (order.size() != w.groups.size())
      throw ConfigError("wbar ordering override has " + std::to_string(order.size()) +
                        " entries, model has " + std::to_string(w.groups.size()));
    std::vector<bool> taken(w.groups.size(), false);
    for (const auto& want : order) {
      int found = -1;
      for (std::size_t g = 0; g < w.groups.size(); ++g) {
        if (!taken[g] && torus_dist(want[0], want[1], w.groups[g].kx, w.groups[g].ky) <
                             kWbarMatchRadius) {
          found = static_cast<int>(g);
          break;
        }
      }
      if (found < 0)
        throw ConfigError("no projected Weyl point near override entry (" +
                          std::to_string(want[0]) + ", " + std::to_string(want[1]) + ")");
      taken[found] = true;
      basis.wbar.push_back({w.groups[found].kx, w.groups[found].ky});
    }
  } else {
    for (const auto& g : w.groups) basis.wbar.push_back({g.kx, g.ky});
  }

  const double r_default = std::min(0.3, 0.5 * min_pairwise_group_dist(w));
  basis.radii.assign(basis.wbar.size(), overrides.disc_radius.value_or(r_default));

  basis.loop_x = Loop::horizontal(s, basis.base_point[1], loop_samples);
  basis.loop_y = Loop::vertical(s, basis.base_point[0], loop_samples);
  for (std::size_t i = 1; i < basis.wbar.size(); ++i) {
    basis.circles.push_back(
        Loop::circle(s, basis.wbar[i][0], basis.wbar[i][1], basis.radii[i], loop_samples));
    require_detj_on_crossings(s, basis.circles.back());
  }
  return basis;
}

HomologyVector edge_homology_vector(const SurfacePair& s, const BasisChoice& basis,
                                    FlowMethod method, int n_sites) {
  auto flow = [&](const Loop& loop) {
    return method == FlowMethod::Analytic ? spectral_flow_analytic(s, loop)
                                          : spectral_flow_numeric(loop, n_sites);
  };
  HomologyVector v;
  v.qx = -flow(basis.loop_y);
  v.qy = flow(basis.loop_x);
  for (const auto& c : basis.circles) v.qi.push_back(flow(c));
  return v;
}

HomologyVector bulk_homology_vector(const BulkModel& m, const BasisChoice& basis, int chern_grid) {
  HomologyVector v;
  v.qx = fhs_chern(ClosedSurfaceGrid::slice_x(m, basis.base_point[0], chern_grid));
  v.qy = -fhs_chern(ClosedSurfaceGrid::slice_y(m, basis.base_point[1], chern_grid));
  for (std::size_t i = 1; i < basis.wbar.size(); ++i)
    v.qi.push_back(-chern_tube(m, {basis.wbar[i][0], basis.wbar[i][1]}, basis.radii[i], chern_grid));
  return v;
}

namespace {

// Intersection with a tangency fallback: rebuild the loop slightly shifted
// and try again, staying within the basis margin.
int intersections_with_retry(const FermiArcComponent& comp, const Loop& base,
                             const std::function<Loop(double)>& rebuild) {
  constexpr double kJitterStep = 0.004;  // 5 steps x 0.004 = 0.02 max
  try {
    return intersection_number(comp, base);
  } catch (const TangentialCrossing&) {
  }
  for (int attempt = 1; attempt <= 5; ++attempt) {
    const double delta = kJitterStep * attempt * (attempt % 2 == 1 ? 1.0 : -1.0);
    try {
      return intersection_number(comp, rebuild(delta));
    } catch (const TangentialCrossing&) {
      if (attempt == 5) throw;
    }
  }
  return 0;  // unreachable
}

}  // namespace

HomologyVector fermi_homology_vector(const SurfacePair& s,
                                     const std::vector<FermiArcComponent>& components,
                                     const BasisChoice& basis) {
  HomologyVector v;
  v.qi.assign(basis.circles.size(), 0);
  const int samples = basis.loop_samples;
  for (const auto& comp : components) {
    const int weight = -comp.epsilon;
    v.qx += weight * intersections_with_retry(comp, basis.loop_y, [&](double d) {
      return Loop::vertical(s, basis.base_point[0] + d, samples);
    });
    v.qy -= weight * intersections_with_retry(comp, basis.loop_x, [&](double d) {
      return Loop::horizontal(s, basis.base_point[1] + d, samples);
    });
    for (std::size_t i = 0; i < basis.circles.size(); ++i) {
      const auto& c = basis.wbar[i + 1];
      v.qi[i] -= weight * intersections_with_retry(comp, basis.circles[i], [&](double d) {
        return Loop::circle(s, c[0], c[1], basis.radii[i + 1] + d, samples);
      });
    }
  }
  return v;
}

namespace {

// Directed Hausdorff distances between point clouds on T^2.
double hausdorff_dist(const std::vector<std::array<double, 2>>& xs,
                      const std::vector<std::array<double, 2>>& ys) {
  double worst = 0.0;
  for (const auto& x : xs) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& y : ys) best = std::min(best, torus_dist(x[0], x[1], y[0], y[1]));
    worst = std::max(worst, best);
  }
  return worst;
}

// Dense sample of F = a^{-1}([-1, 1]) cap b^{-1}(0) from grid-edge crossings.
std::vector<std::array<double, 2>> sample_fermi_set(const SurfacePair& s, int grid_n) {
  const double h = two_pi / grid_n;
  std::vector<std::array<double, 2>> pts;
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const double b00 = s.b_at(h * i, h * j);
      for (int dir = 0; dir < 2; ++dir) {
        const double b1 = dir == 0 ? s.b_at(h * (i + 1), h * j) : s.b_at(h * i, h * (j + 1));
        if (b00 == 0.0 ? false : (b00 < 0) != (b1 < 0)) {
          const double t = b00 / (b00 - b1);
          const double kx = dir == 0 ? h * (i + t) : h * i;
          const double ky = dir == 0 ? h * j : h * (j + t);
          if (std::abs(s.a_at(kx, ky)) <= 1.0) pts.push_back({kx, ky});
        } else if (b00 == 0.0) {
          if (std::abs(s.a_at(h * i, h * j)) <= 1.0) pts.push_back({h * i, h * j});
        }
      }
    }
  }
  return pts;
}

}  // namespace

BecReport verify_bec(const SurfacePair& s, const VerifyOptions& options) {
  BecReport rep;
  rep.assumptions = check_assumptions(s, options.grid_n);
  rep.weyl = rep.assumptions.weyl;
  if (!rep.assumptions.all_passed())
    throw AssumptionViolated(rep.assumptions.failed_clause(), "numerical assumption check failed");

  rep.basis = choose_basis(s, rep.weyl, rep.assumptions, options.basis, options.loop_samples);
  rep.arcs = extract_fermi_arcs(s, rep.weyl, options.grid_n);

  const BulkModel model = BulkModel::local_form(s);

  // Charges: sphere Chern numbers. The sphere radius keeps every other Weyl
  // point outside.
  double min_3d = std::numbers::pi;
  for (std::size_t i = 0; i < rep.weyl.points.size(); ++i)
    for (std::size_t j = i + 1; j < rep.weyl.points.size(); ++j) {
      const auto& p = rep.weyl.points[i];
      const auto& q = rep.weyl.points[j];
      min_3d = std::min(min_3d, std::hypot(torus_dist(p.kx, p.ky, q.kx, q.ky),
                                           wrap_diff(p.kz, q.kz)));
    }
  rep.sphere_radius = std::min(0.2, 0.45 * min_3d);
  int charge_sum = 0;
  for (auto& p : rep.weyl.points) {
    p.charge = chern_sphere(model, p, rep.sphere_radius);
    charge_sum += p.charge;
  }
  rep.charge_sum_zero = charge_sum == 0;

  // Fiber sums against tube Chern numbers, for every group.
  rep.fiber_sums_match = true;
  for (std::size_t g = 0; g < rep.weyl.groups.size(); ++g) {
    const auto& grp = rep.weyl.groups[g];
    const double r = rep.basis.radii.empty() ? 0.3 : rep.basis.radii[g];
    const int tube = chern_tube(model, {grp.kx, grp.ky}, r, options.chern_grid);
    rep.tube_chern.push_back(tube);
    int sum = 0;
    for (int idx : grp.members) sum += rep.weyl.points[idx].charge;
    if (sum != tube) rep.fiber_sums_match = false;
  }

  rep.bulk = bulk_homology_vector(model, rep.basis, options.chern_grid);
  rep.edge = edge_homology_vector(s, rep.basis, options.flow, options.n_sites);
  rep.fermi = fermi_homology_vector(s, rep.arcs, rep.basis);
  rep.bulk_edge_equal = rep.bulk == rep.edge;
  rep.edge_fermi_equal = rep.edge == rep.fermi;

  // Recovery check: the extracted arcs together with pi(W) must
  // reproduce F at grid resolution.
  std::vector<std::array<double, 2>> covered;
  for (const auto& comp : rep.arcs)
    covered.insert(covered.end(), comp.polyline.begin(), comp.polyline.end());
  for (const auto& g : rep.weyl.groups) covered.push_back({g.kx, g.ky});
  const auto dense = sample_fermi_set(s, options.grid_n);
  rep.hausdorff_bound = 2.0 * two_pi / options.grid_n;
  if (dense.empty() && covered.size() == rep.weyl.groups.size()) {
    rep.hausdorff = 0.0;  // gapped edge: F is pi(W) or empty
    rep.fermi_arc_recovered = true;
  } else if (dense.empty() || covered.empty()) {
    rep.hausdorff = std::numeric_limits<double>::infinity();
    rep.fermi_arc_recovered = dense.empty() && covered.empty();
  } else {
    rep.hausdorff = std::max(hausdorff_dist(covered, dense), hausdorff_dist(dense, covered));
    rep.fermi_arc_recovered = rep.hausdorff < rep.hausdorff_bound;
  }

  rep.passed = rep.bulk_edge_equal && rep.edge_fermi_equal && rep.charge_sum_zero &&
               rep.fiber_sums_match && rep.fermi_arc_recovered;
  return rep;
}

}  // namespace weylbec
