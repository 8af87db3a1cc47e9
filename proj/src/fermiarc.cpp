#include "weylbec/fermiarc.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "weylbec/errors.hpp"
#include "weylbec/parallel.hpp"
#include "weylbec/torus.hpp"

namespace weylbec {

namespace {

constexpr double kGradTolerance = 1e-8;
constexpr double kTangentSine = 1e-3;

// Key of a grid edge: dir 0 joins (i, j)-(i+1, j), dir 1 joins (i, j)-(i, j+1).
std::int64_t edge_key(int dir, int i, int j, int n) {
  return (static_cast<std::int64_t>(dir) * n + i) * n + j;
}

struct Crossing {
  double kx, ky;
  bool masked;  // |a| >= 1 at the crossing point
  std::vector<std::int64_t> nbors;
};

double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

}  // namespace

std::vector<FermiArcComponent> extract_fermi_arcs(const SurfacePair& s, const WeylSet& w,
                                                  int grid_n) {
  const int n = grid_n;
  const double h = two_pi / n;
  const double snap_radius = 3.0 * h;

  std::vector<double> bv(static_cast<std::size_t>(n) * n);
  detail::parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    for (int j = 0; j < n; ++j) bv[i * n + j] = s.b_at(h * static_cast<double>(i), h * j);
  });
  auto bval = [&](int i, int j) { return bv[static_cast<std::size_t>(i % n) * n + (j % n)]; };
  // symbolic perturbation: exact zeros count as positive
  auto positive = [&](int i, int j) { return bval(i, j) >= 0.0; };

  std::map<std::int64_t, Crossing> crossings;
  auto crossing_on = [&](int dir, int i, int j) -> Crossing& {
    const auto key = edge_key(dir, i, j, n);
    auto it = crossings.find(key);
    if (it != crossings.end()) return it->second;
    const double b0 = bval(i, j);
    const double b1 = dir == 0 ? bval(i + 1, j) : bval(i, j + 1);
    const double t = b0 / (b0 - b1);
    const double kx = dir == 0 ? h * (i + t) : h * i;
    const double ky = dir == 0 ? h * j : h * (j + t);
    const bool masked = std::abs(s.a_at(kx, ky)) >= 1.0;
    return crossings.emplace(key, Crossing{kx, ky, masked, {}}).first->second;
  };

  auto connect = [&](int d0, int i0, int j0, int d1, int i1, int j1) {
    i0 %= n; j0 %= n; i1 %= n; j1 %= n;  // torus seam
    Crossing& p = crossing_on(d0, i0, j0);
    Crossing& q = crossing_on(d1, i1, j1);
    if (p.masked || q.masked) return;
    p.nbors.push_back(edge_key(d1, i1, j1, n));
    q.nbors.push_back(edge_key(d0, i0, j0, n));
  };

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int cfg = (positive(i, j) ? 1 : 0) | (positive(i + 1, j) ? 2 : 0) |
                      (positive(i + 1, j + 1) ? 4 : 0) | (positive(i, j + 1) ? 8 : 0);
      if (cfg == 0 || cfg == 15) continue;
      // edge slots of this cell: bottom (0,i,j), top (0,i,j+1),
      // left (1,i,j), right (1,i+1,j)
      switch (cfg) {
        case 1:
        case 14:
          connect(0, i, j, 1, i, j);
          break;
        case 2:
        case 13:
          connect(0, i, j, 1, i + 1, j);
          break;
        case 3:
        case 12:
          connect(1, i, j, 1, i + 1, j);
          break;
        case 4:
        case 11:
          connect(0, i, j + 1, 1, i + 1, j);
          break;
        case 6:
        case 9:
          connect(0, i, j, 0, i, j + 1);
          break;
        case 8:
        case 7:
          connect(0, i, j + 1, 1, i, j);
          break;
        case 5: {  // + at (i,j) and (i+1,j+1)
          const bool center =
              s.b_at(h * (i + 0.5), h * (j + 0.5)) >= 0.0;
          if (center) {
            connect(0, i, j, 1, i + 1, j);
            connect(0, i, j + 1, 1, i, j);
          } else {
            connect(0, i, j, 1, i, j);
            connect(0, i, j + 1, 1, i + 1, j);
          }
          break;
        }
        case 10: {  // + at (i+1,j) and (i,j+1)
          const bool center =
              s.b_at(h * (i + 0.5), h * (j + 0.5)) >= 0.0;
          if (center) {
            connect(0, i, j, 1, i, j);
            connect(0, i, j + 1, 1, i + 1, j);
          } else {
            connect(0, i, j, 1, i + 1, j);
            connect(0, i, j + 1, 1, i, j);
          }
          break;
        }
        default:
          break;
      }
    }
  }

  // Chain segments into components: open paths first (their ends are the
  // degree-1 nodes), then the remaining cycles.
  std::map<std::int64_t, int> degree;
  for (const auto& [key, c] : crossings)
    if (!c.masked && !c.nbors.empty()) degree[key] = static_cast<int>(c.nbors.size());

  std::vector<FermiArcComponent> components;
  std::map<std::int64_t, bool> visited;

  auto walk = [&](std::int64_t start, bool open_path) {
    FermiArcComponent comp;
    comp.kind = open_path ? FermiArcComponent::Kind::Arc : FermiArcComponent::Kind::Circle;
    std::int64_t prev = -1, cur = start;
    for (;;) {
      visited[cur] = true;
      const Crossing& c = crossings.at(cur);
      // crossings on the two edges of a node-exact zero coincide; keep one
      if (comp.polyline.empty() || comp.polyline.back()[0] != c.kx ||
          comp.polyline.back()[1] != c.ky)
        comp.polyline.push_back({c.kx, c.ky});
      std::int64_t next = -1;
      for (auto nb : c.nbors) {
        if (nb != prev && !visited[nb]) {
          next = nb;
          break;
        }
      }
      if (next < 0) break;
      prev = cur;
      cur = next;
    }
    if (comp.kind == FermiArcComponent::Kind::Circle && comp.polyline.size() > 1 &&
        comp.polyline.front() == comp.polyline.back())
      comp.polyline.pop_back();
    components.push_back(std::move(comp));
  };

  for (const auto& [key, deg] : degree)
    if (deg == 1 && !visited[key]) walk(key, true);
  for (const auto& [key, deg] : degree)
    if (!visited[key]) walk(key, false);

  // Snap open ends to pi(W).
  for (auto& comp : components) {
    if (comp.kind != FermiArcComponent::Kind::Arc) continue;
    for (int end = 0; end < 2; ++end) {
      const auto& pt = end == 0 ? comp.polyline.front() : comp.polyline.back();
      const ProjectedGroup* nearest = nullptr;
      double best = snap_radius;
      for (const auto& g : w.groups) {
        const double d = torus_dist(pt[0], pt[1], g.kx, g.ky);
        if (d < best) {
          best = d;
          nearest = &g;
        }
      }
      if (nearest == nullptr)
        throw DanglingEndpoint("open contour end at (" + std::to_string(pt[0]) + ", " +
                               std::to_string(pt[1]) + ") has no projected Weyl point within " +
                               std::to_string(snap_radius));
      if (end == 0)
        comp.polyline.insert(comp.polyline.begin(), {nearest->kx, nearest->ky});
      else
        comp.polyline.push_back({nearest->kx, nearest->ky});
    }
  }

  for (auto& comp : components) comp.epsilon = component_sign(s, comp);
  return components;
}

int component_sign(const SurfacePair& s, const FermiArcComponent& comp) {
  const int size = static_cast<int>(comp.polyline.size());
  const bool circle = comp.kind == FermiArcComponent::Kind::Circle;
  // interior vertices have both neighbours on the contour
  const int lo = circle ? 0 : 1;
  const int hi = circle ? size - 1 : size - 2;
  const int count = hi - lo + 1;
  if (count < 1) throw SignInconsistent("component too short to orient");

  const int samples = std::min(count, 10);
  int sign = 0;
  for (int k = 0; k < samples; ++k) {
    const int idx = lo + static_cast<int>((static_cast<double>(k) + 0.5) / samples * count);
    const int i = std::min(idx, hi);
    const auto& p = comp.polyline[(i - 1 + size) % size];
    const auto& q = comp.polyline[(i + 1) % size];
    const auto& c = comp.polyline[i];
    const double tx = wrap_diff(q[0], p[0]);
    const double ty = wrap_diff(q[1], p[1]);
    const auto [gx, gy] = s.grad_b_at(c[0], c[1]);
    if (std::hypot(gx, gy) <= kGradTolerance)
      throw SignInconsistent("grad b below tolerance on component");
    const double cf = -gx * ty + gy * tx;
    const int sk = cf > 0.0 ? 1 : cf < 0.0 ? -1 : 0;
    if (sk == 0) throw SignInconsistent("c_f vanishes at a component sample");
    if (sign == 0)
      sign = sk;
    else if (sign != sk)
      throw SignInconsistent("c_f changes sign along a component");
  }
  return sign;
}

int intersection_number(const FermiArcComponent& comp, const Loop& loop) {
  const int size = static_cast<int>(comp.polyline.size());
  const int nseg = comp.kind == FermiArcComponent::Kind::Circle ? size : size - 1;
  const int m = loop.loop_samples();
  int total = 0;

  // Side of a vertex with respect to a segment's line, always via the same
  // minimal-image formula: a vertex shared by two adjacent segments then
  // gets a bit-identical side value in both, so a crossing that grazes a
  // polyline vertex is counted exactly once ("on the line" is the
  // non-positive side).
  auto side = [](double ax, double ay, double anchor_x, double anchor_y, double vx, double vy) {
    return cross2(ax, ay, wrap_diff(vx, anchor_x), wrap_diff(vy, anchor_y));
  };

  for (int i = 0; i < nseg; ++i) {
    const auto& p0 = comp.polyline[i];
    const auto& p1 = comp.polyline[(i + 1) % size];
    const double dx = wrap_diff(p1[0], p0[0]);
    const double dy = wrap_diff(p1[1], p0[1]);
    const double dlen = std::hypot(dx, dy);
    if (dlen == 0.0) continue;
    for (int j = 0; j < m; ++j) {
      const auto& q0 = loop.pts[j];
      const auto& qn = loop.pts[(j + 1) % m];  // wrapped index, not the closing copy
      if (std::abs(wrap_diff(q0.kx, p0[0])) > 0.5 || std::abs(wrap_diff(q0.ky, p0[1])) > 0.5)
        continue;
      const double ex = loop.pts[j + 1].kx - q0.kx;
      const double ey = loop.pts[j + 1].ky - q0.ky;
      const double elen = std::hypot(ex, ey);
      if (elen == 0.0) continue;
      const double side_q0 = side(dx, dy, p0[0], p0[1], q0.kx, q0.ky);
      const double side_q1 = side(dx, dy, p0[0], p0[1], qn.kx, qn.ky);
      if ((side_q0 > 0.0) == (side_q1 > 0.0)) continue;
      const double side_p0 = side(ex, ey, q0.kx, q0.ky, p0[0], p0[1]);
      const double side_p1 = side(ex, ey, q0.kx, q0.ky, p1[0], p1[1]);
      if ((side_p0 > 0.0) == (side_p1 > 0.0)) continue;
      const double denom = cross2(dx, dy, ex, ey);
      if (std::abs(denom) < kTangentSine * dlen * elen)
        throw TangentialCrossing("component and " + loop.label + " are tangent near (" +
                                 std::to_string(p0[0]) + ", " + std::to_string(p0[1]) + ")");
      total += denom > 0.0 ? 1 : -1;
    }
  }
  return total;
}

}  // namespace weylbec
