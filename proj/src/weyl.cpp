#include "weylbec/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "weylbec/errors.hpp"
#include "weylbec/parallel.hpp"
#include "weylbec/torus.hpp"

namespace weylbec {

namespace {

// Target residual 1e-14: at a degenerate root (singular Jacobian) the
// position error scales like sqrt(residual), and it must end up safely
// below the dedup distance so seeds from different cells merge.
constexpr double kNewtonResidual = 1e-14;
constexpr double kAcceptResidual = 1e-12;
constexpr double kDedupDistance = 1e-6;
constexpr int kNewtonMaxIter = 60;

struct Root {
  double kx, ky;
  double target;  // +1 or -1
};

// Newton iteration on (a - target, b) = 0 from the given seed, with a
// Levenberg-Marquardt fallback. The fallback matters when the Jacobian is
// singular at the root itself (an arc crossing at a saddle of b), where
// plain Newton cannot converge.
Root refine(const SurfacePair& s, double kx, double ky, double target, int ci, int cj) {
  const double seed_x = kx, seed_y = ky;
  for (int it = 0; it < kNewtonMaxIter; ++it) {
    const double g0 = s.a_at(kx, ky) - target;
    const double g1 = s.b_at(kx, ky);
    if (std::max(std::abs(g0), std::abs(g1)) < kNewtonResidual) return {kx, ky, target};
    const auto [axx, axy] = s.grad_a_at(kx, ky);
    const auto [bxx, bxy] = s.grad_b_at(kx, ky);
    const double det = axx * bxy - axy * bxx;
    if (std::abs(det) < 1e-10) break;  // near-singular: switch methods
    kx -= (g0 * bxy - g1 * axy) / det;
    ky -= (g1 * axx - g0 * bxx) / det;
  }

  kx = seed_x;
  ky = seed_y;
  auto sq_residual = [&](double x, double y) {
    const double g0 = s.a_at(x, y) - target;
    const double g1 = s.b_at(x, y);
    return g0 * g0 + g1 * g1;
  };
  double mu = 1e-4;
  double r2 = sq_residual(kx, ky);
  for (int it = 0; it < 300; ++it) {
    if (r2 < kNewtonResidual * kNewtonResidual) return {kx, ky, target};
    const double g0 = s.a_at(kx, ky) - target;
    const double g1 = s.b_at(kx, ky);
    const auto [axx, axy] = s.grad_a_at(kx, ky);
    const auto [bxx, bxy] = s.grad_b_at(kx, ky);
    // normal equations (J^T J + mu I) delta = -J^T g
    const double h00 = axx * axx + bxx * bxx + mu;
    const double h01 = axx * axy + bxx * bxy;
    const double h11 = axy * axy + bxy * bxy + mu;
    const double q0 = axx * g0 + bxx * g1;
    const double q1 = axy * g0 + bxy * g1;
    const double det = h00 * h11 - h01 * h01;
    if (det <= 0.0) {
      mu *= 10.0;
      continue;
    }
    const double dx = -(q0 * h11 - q1 * h01) / det;
    const double dy = -(q1 * h00 - q0 * h01) / det;
    const double trial = sq_residual(kx + dx, ky + dy);
    if (trial < r2) {
      kx += dx;
      ky += dy;
      r2 = trial;
      mu = std::max(mu / 3.0, 1e-14);
    } else {
      mu *= 4.0;
      if (mu > 1e12) break;  // stalled, typically at the arithmetic floor
    }
  }
  if (r2 < kAcceptResidual * kAcceptResidual) return {kx, ky, target};
  throw NewtonDiverged("no convergence from cell (" + std::to_string(ci) + ", " +
                       std::to_string(cj) + "), residual " + std::to_string(std::sqrt(r2)));
}

// Find all zeros of f along the segment [t0, t1] by sign-change bisection on
// a fine subdivision. f must have simple zeros at this resolution.
template <typename F>
std::vector<double> zeros_on_segment(F&& f, double t0, double t1, int steps) {
  std::vector<double> zs;
  double prev_t = t0;
  double prev_v = f(t0);
  for (int i = 1; i <= steps; ++i) {
    const double t = t0 + (t1 - t0) * i / steps;
    const double v = f(t);
    if (prev_v == 0.0) {
      zs.push_back(prev_t);
    } else if (v != 0.0 && (prev_v < 0) != (v < 0)) {
      double lo = prev_t, hi = t, flo = prev_v;
      for (int k = 0; k < 80; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      zs.push_back(0.5 * (lo + hi));
    }
    prev_t = t;
    prev_v = v;
  }
  return zs;
}

}  // namespace

char AssumptionReport::failed_clause() const {
  if (!finiteness.passed) return 'a';
  if (!jacobian_near_w.passed) return 'b';
  if (!regular_value.passed) return 'c';
  if (!base_point_found.passed) return 'd';
  return '\0';
}

WeylSet detect_weyl_points(const SurfacePair& s, int grid_n) {
  if (grid_n < 64) throw ConfigError("detect_weyl_points requires grid_n >= 64");
  const int n = grid_n;
  const double h = two_pi / n;

  std::vector<double> av(static_cast<std::size_t>(n) * n), bv(av.size());
  detail::parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const double kx = h * static_cast<double>(i);
    for (int j = 0; j < n; ++j) {
      const double ky = h * j;
      av[i * n + j] = s.a_at(kx, ky);
      bv[i * n + j] = s.b_at(kx, ky);
    }
  });
  auto at = [&](const std::vector<double>& v, int i, int j) {
    return v[static_cast<std::size_t>((i % n + n) % n) * n + ((j % n + n) % n)];
  };

  WeylSet out;
  auto add_root = [&](const Root& r) {
    const double kx = wrap_angle(r.kx), ky = wrap_angle(r.ky);
    for (const auto& p : out.points)
      if (torus_dist(p.kx, p.ky, kx, ky) < kDedupDistance) return;
    out.points.push_back({kx, ky, r.target > 0 ? std::numbers::pi : 0.0, 0});
  };

  // Row-major cell scan so deduplication order is reproducible.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double c[4] = {at(bv, i, j), at(bv, i + 1, j), at(bv, i, j + 1), at(bv, i + 1, j + 1)};
      const bool b_lo = std::min({c[0], c[1], c[2], c[3]}) <= 0.0;
      const bool b_hi = std::max({c[0], c[1], c[2], c[3]}) >= 0.0;
      if (!b_lo || !b_hi) continue;
      const double av4[4] = {at(av, i, j), at(av, i + 1, j), at(av, i, j + 1), at(av, i + 1, j + 1)};
      for (double target : {1.0, -1.0}) {
        double lo = av4[0] - target, hi = lo;
        for (int k = 1; k < 4; ++k) {
          lo = std::min(lo, av4[k] - target);
          hi = std::max(hi, av4[k] - target);
        }
        if (lo <= 0.0 && hi >= 0.0)
          add_root(refine(s, h * (i + 0.5), h * (j + 0.5), target, i, j));
      }
    }
  }

  // Group points whose projections coincide within the snap tolerance.
  std::vector<bool> used(out.points.size(), false);
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    if (used[i]) continue;
    ProjectedGroup g{out.points[i].kx, out.points[i].ky, {static_cast<int>(i)}};
    used[i] = true;
    for (std::size_t j = i + 1; j < out.points.size(); ++j) {
      if (used[j]) continue;
      if (torus_dist(g.kx, g.ky, out.points[j].kx, out.points[j].ky) < kDedupDistance) {
        g.members.push_back(static_cast<int>(j));
        used[j] = true;
      }
    }
    out.groups.push_back(std::move(g));
  }
  std::sort(out.groups.begin(), out.groups.end(), [](const auto& p, const auto& q) {
    return p.kx != q.kx ? p.kx < q.kx : p.ky < q.ky;
  });
  return out;
}

bool base_point_admissible(const SurfacePair& s, const WeylSet& w, double kx0, double ky0,
                           double margin, double tol) {
  for (const auto& g : w.groups) {
    if (circle_dist(kx0, g.kx) <= margin) return false;
    if (circle_dist(ky0, g.ky) <= margin) return false;
  }
  // det J must not vanish where the two lines cross the Fermi arc.
  auto b_on_vline = [&](double t) { return s.b_at(kx0, t); };
  for (double ky : zeros_on_segment(b_on_vline, 0.0, two_pi, 2048)) {
    if (std::abs(s.a_at(kx0, ky)) < 1.0 && std::abs(s.det_j_at(kx0, ky)) <= tol) return false;
  }
  auto b_on_hline = [&](double t) { return s.b_at(t, ky0); };
  for (double kx : zeros_on_segment(b_on_hline, 0.0, two_pi, 2048)) {
    if (std::abs(s.a_at(kx, ky0)) < 1.0 && std::abs(s.det_j_at(kx, ky0)) <= tol) return false;
  }
  return true;
}

namespace {

// Candidate coordinates for clause (d), sorted by decreasing clearance from
// the projected Weyl points in one axis.
std::vector<double> clearance_sorted(const std::vector<double>& obstacles, int n_candidates) {
  std::vector<std::pair<double, double>> scored;  // (-clearance, coord)
  for (int i = 0; i < n_candidates; ++i) {
    const double x = two_pi * (i + 0.5) / n_candidates;
    double c = std::numbers::pi;
    for (double o : obstacles) c = std::min(c, circle_dist(x, o));
    scored.emplace_back(-c, x);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<double> out;
  out.reserve(scored.size());
  for (auto& [negc, x] : scored) out.push_back(x);
  return out;
}

}  // namespace

AssumptionReport check_assumptions(const SurfacePair& s, int grid_n) {
  AssumptionReport rep;
  rep.grid_n = grid_n;

  // (a) finite, isolated root set
  try {
    rep.weyl = detect_weyl_points(s, grid_n);
    double min_sep = std::numbers::pi;
    std::size_t close_i = 0, close_j = 0;
    for (std::size_t i = 0; i < rep.weyl.points.size(); ++i)
      for (std::size_t j = i + 1; j < rep.weyl.points.size(); ++j) {
        const double d = torus_dist(rep.weyl.points[i].kx, rep.weyl.points[i].ky,
                                    rep.weyl.points[j].kx, rep.weyl.points[j].ky);
        if (d < min_sep) {
          min_sep = d;
          close_i = i;
          close_j = j;
        }
      }
    rep.finiteness.detail = std::to_string(rep.weyl.points.size()) + " points";
    if (rep.weyl.points.size() >= 2 && min_sep < 100 * kDedupDistance) {
      rep.finiteness.passed = false;
      rep.finiteness.detail += ", separation below resolution";
      rep.finiteness.witnesses.push_back({rep.weyl.points[close_i].kx, rep.weyl.points[close_i].ky});
      rep.finiteness.witnesses.push_back({rep.weyl.points[close_j].kx, rep.weyl.points[close_j].ky});
    }
  } catch (const NumericalError& e) {
    rep.finiteness.passed = false;
    rep.finiteness.detail = e.what();
    return rep;
  }

  // (b) |det J| > tol on the arc near each projected Weyl point, the point
  // itself excluded. Probed on rings of several radii up to the
  // neighbourhood radius.
  for (const auto& g : rep.weyl.groups) {
    for (int ring = 1; ring <= 6; ++ring) {
      const double rho = rep.neighbourhood_radius * ring / 6.0;
      auto b_on_ring = [&](double t) {
        return s.b_at(g.kx + rho * std::cos(t), g.ky + rho * std::sin(t));
      };
      for (double t : zeros_on_segment(b_on_ring, 0.0, two_pi, 720)) {
        const double kx = g.kx + rho * std::cos(t), ky = g.ky + rho * std::sin(t);
        if (std::abs(s.a_at(kx, ky)) >= 1.0) continue;
        if (std::abs(s.det_j_at(kx, ky)) <= rep.tolerance) {
          rep.jacobian_near_w.passed = false;
          rep.jacobian_near_w.witnesses.push_back({wrap_angle(kx), wrap_angle(ky)});
        }
      }
    }
  }
  if (!rep.jacobian_near_w.passed)
    rep.jacobian_near_w.detail = "det J vanishes on the arc near a projected Weyl point";

  // (c) 0 is a regular value of b on |a| < 1: check |grad b| at every
  // grid-edge crossing of b = 0 inside the mask. Crossings within the
  // endpoint snap radius of pi(W) belong to the arc ends covered by (b);
  // the open-region condition is empty there at grid resolution.
  {
    const int n = grid_n;
    const double h = two_pi / n;
    const double skip_radius = 3.0 * h;
    std::vector<std::array<double, 2>> bad;
    std::mutex m;
    detail::parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
      for (int j = 0; j < n; ++j) {
        const double x0 = h * static_cast<double>(i), y0 = h * j;
        const double b00 = s.b_at(x0, y0);
        const double bx = s.b_at(x0 + h, y0), by = s.b_at(x0, y0 + h);
        for (int dir = 0; dir < 2; ++dir) {
          const double b1 = dir == 0 ? bx : by;
          if (b00 == 0.0 || (b00 < 0) == (b1 < 0)) continue;
          const double t = b00 / (b00 - b1);
          const double kx = dir == 0 ? x0 + t * h : x0;
          const double ky = dir == 0 ? y0 : y0 + t * h;
          if (std::abs(s.a_at(kx, ky)) >= 1.0) continue;
          bool near_w = false;
          for (const auto& g : rep.weyl.groups)
            if (torus_dist(kx, ky, g.kx, g.ky) < skip_radius) {
              near_w = true;
              break;
            }
          if (near_w) continue;
          const auto [gx, gy] = s.grad_b_at(kx, ky);
          if (std::hypot(gx, gy) <= rep.tolerance) {
            std::lock_guard<std::mutex> lock(m);
            bad.push_back({kx, ky});
          }
        }
      }
    });
    if (!bad.empty()) {
      rep.regular_value.passed = false;
      rep.regular_value.detail = "grad b vanishes on the Fermi arc";
      std::sort(bad.begin(), bad.end());
      rep.regular_value.witnesses = std::move(bad);
    }
  }

  // (d) pick grid lines that maximize clearance from pi(W) and satisfy the
  // det J condition at their arc crossings.
  {
    std::vector<double> ox, oy;
    for (const auto& g : rep.weyl.groups) {
      ox.push_back(g.kx);
      oy.push_back(g.ky);
    }
    const auto cand_x = clearance_sorted(ox, 64);
    const auto cand_y = clearance_sorted(oy, 64);
    bool found = false;
    for (std::size_t i = 0; i < cand_x.size() && !found; ++i) {
      for (std::size_t j = 0; j < std::min<std::size_t>(cand_y.size(), 8) && !found; ++j) {
        if (base_point_admissible(s, rep.weyl, cand_x[i], cand_y[j], 0.1, rep.tolerance)) {
          rep.base_point = {cand_x[i], cand_y[j]};
          found = true;
        }
      }
      if (i >= 8 && !found) break;
    }
    if (!found) {
      rep.base_point_found.passed = false;
      rep.base_point_found.detail = "no admissible base point among candidates";
      if (!cand_x.empty() && !cand_y.empty())
        rep.base_point_found.witnesses.push_back({cand_x[0], cand_y[0]});
    } else {
      rep.base_point_found.detail = "base point (" + std::to_string(rep.base_point[0]) + ", " +
                                    std::to_string(rep.base_point[1]) + ")";
    }
  }

  return rep;
}

}  // namespace weylbec
