#include "weylbec/edge.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

#include "weylbec/errors.hpp"
#include "weylbec/parallel.hpp"
#include "weylbec/torus.hpp"

namespace weylbec {

namespace {

// Fraction of the essential gap used as the tracking window. Slightly below
// one so that band-edge states of the finite chain, which sit at the gap
// boundary with O(1/N) scatter, stay out of the midgap window.
constexpr double kWindowFraction = 0.95;
constexpr double kLeftWeightKeep = 0.9;
constexpr double kLeftWeightDrop = 0.1;
constexpr double kOverlapThreshold = 0.7;
constexpr double kLoopGapTolerance = 1e-3;
// A crossing sample can hybridize the left and right edge states into an
// ambiguous pair; single holes are skipped during tracking, longer runs
// mean n_sites is too small.
constexpr int kMaxHole = 2;
constexpr int kMaxAmbiguousRun = 3;

struct MidgapState {
  double energy = 0.0;
  double left_weight = 0.0;
  std::vector<double> vec;
};

struct SampleStates {
  std::vector<MidgapState> kept;
  int ambiguous = 0;
};

SampleStates midgap_states(double a, double b, int n_sites) {
  EdgeEigenSystem sys = edge_spectrum(build_edge_chain(a, b, n_sites));
  const double window = kWindowFraction * essential_gap(a, b);
  SampleStates out;
  for (int k = 0; k < sys.dim; ++k) {
    if (std::abs(sys.eigenvalues[k]) >= window) continue;
    const double lw = sys.left_weight[k];
    if (lw > kLeftWeightKeep) {
      auto col = sys.vector(k);
      out.kept.push_back({sys.eigenvalues[k], lw, std::vector<double>(col.begin(), col.end())});
    } else if (lw >= kLeftWeightDrop) {
      ++out.ambiguous;
    }
  }
  return out;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

double EdgeChain::entry(int i, int j) const {
  if (i == j) return diag[i];
  if (std::abs(i - j) == 1) return off_diag[std::min(i, j)];
  return 0.0;
}

EdgeChain build_edge_chain(double a, double b, int n_sites) {
  if (n_sites < 1) throw ConfigError("build_edge_chain requires n_sites >= 1");
  EdgeChain c;
  c.a = a;
  c.b = b;
  c.n_sites = n_sites;
  c.diag.resize(2 * n_sites);
  c.off_diag.resize(2 * n_sites - 1);
  for (int n = 0; n < n_sites; ++n) {
    c.diag[2 * n] = b;
    c.diag[2 * n + 1] = -b;
    c.off_diag[2 * n] = a;            // V block: alpha_n -- beta_n
    if (n + 1 < n_sites) c.off_diag[2 * n + 1] = 1.0;  // A block: beta_n -- alpha_{n+1}
  }
  return c;
}

EdgeEigenSystem edge_spectrum(const EdgeChain& chain) {
  const int n = chain.dim();
  EdgeEigenSystem sys;
  sys.dim = n;
  sys.eigenvalues = chain.diag;
  std::vector<double> off = chain.off_diag;
  sys.vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
  const lapack_int info = LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V', n, sys.eigenvalues.data(),
                                         off.data(), sys.vectors.data(), n);
  if (info != 0)
    throw ConvergenceFailure("dstevd failed with info=" + std::to_string(info) + " for (a, b) = (" +
                             std::to_string(chain.a) + ", " + std::to_string(chain.b) + ")");
  sys.left_weight.resize(n);
  const int half = n / 2;  // components of sites 1 .. n_sites/2
  for (int k = 0; k < n; ++k) {
    double w = 0.0;
    const double* col = sys.vectors.data() + static_cast<std::size_t>(k) * n;
    for (int i = 0; i < half; ++i) w += col[i] * col[i];
    sys.left_weight[k] = w;
  }
  return sys;
}

std::optional<double> analytic_edge_energy(double a, double b) {
  if (std::abs(a) < 1.0) return b;
  return std::nullopt;
}

std::optional<std::pair<double, double>> flat_band_energies(double a, double b) {
  if (a == 0.0) {
    const double e = std::sqrt(b * b + 1.0);
    return std::make_pair(-e, e);
  }
  return std::nullopt;
}

TransferData transfer_matrix(double a, double b, double energy) {
  if (a == 0.0) throw ZeroA("transfer matrix undefined at a = 0");
  TransferData t;
  t.r = {{{-a, b + energy}, {b - energy, (energy * energy - b * b - 1.0) / a}}};
  t.trace = t.r[0][0] + t.r[1][1];
  t.det = t.r[0][0] * t.r[1][1] - t.r[0][1] * t.r[1][0];
  t.discriminant = t.trace * t.trace - 4.0 * t.det;
  return t;
}

double Loop::min_gap() const {
  double g = pts.empty() ? 0.0 : pts[0].gap;
  for (const auto& p : pts) g = std::min(g, p.gap);
  return g;
}

Loop Loop::reversed() const {
  Loop r;
  r.label = label + " reversed";
  r.pts.assign(pts.rbegin(), pts.rend());
  return r;
}

namespace {

Loop build_loop(const SurfacePair& s, int samples, std::string label,
                const std::function<std::array<double, 2>(double)>& gamma) {
  Loop loop;
  loop.label = std::move(label);
  loop.pts.resize(samples + 1);
  for (int i = 0; i <= samples; ++i) {
    const auto [kx, ky] = gamma(static_cast<double>(i) / samples);
    const double a = s.a_at(kx, ky), b = s.b_at(kx, ky);
    loop.pts[i] = {kx, ky, a, b, essential_gap(a, b)};
  }
  return loop;
}

}  // namespace

Loop Loop::circle(const SurfacePair& s, double cx, double cy, double radius, int samples) {
  return build_loop(s, samples,
                    "circle((" + std::to_string(cx) + ", " + std::to_string(cy) + "), r=" +
                        std::to_string(radius) + ")",
                    [&](double t) -> std::array<double, 2> {
                      return {cx + radius * std::cos(two_pi * t), cy + radius * std::sin(two_pi * t)};
                    });
}

Loop Loop::vertical(const SurfacePair& s, double kx0, int samples) {
  return build_loop(s, samples, "{kx=" + std::to_string(kx0) + "} x S1",
                    [&](double t) -> std::array<double, 2> { return {kx0, two_pi * t}; });
}

Loop Loop::horizontal(const SurfacePair& s, double ky0, int samples) {
  return build_loop(s, samples, "S1 x {ky=" + std::to_string(ky0) + "}",
                    [&](double t) -> std::array<double, 2> { return {two_pi * t, ky0}; });
}

Loop Loop::from_points(const SurfacePair& s, const std::vector<std::array<double, 2>>& vertices,
                       std::string label) {
  Loop loop;
  loop.label = std::move(label);
  loop.pts.reserve(vertices.size() + 1);
  for (const auto& [kx, ky] : vertices) {
    const double a = s.a_at(kx, ky), b = s.b_at(kx, ky);
    loop.pts.push_back({kx, ky, a, b, essential_gap(a, b)});
  }
  loop.pts.push_back(loop.pts.front());
  return loop;
}

int spectral_flow_numeric(const Loop& loop, int n_sites) {
  const int m = loop.loop_samples();
  if (m < 3) throw ConfigError("spectral_flow_numeric needs at least 3 loop samples");
  if (loop.min_gap() <= kLoopGapTolerance)
    throw GapViolation("loop " + loop.label + " passes within gap tolerance of pi(W)");

  std::vector<SampleStates> per(m);
  detail::parallel_for(static_cast<std::size_t>(m), [&](std::size_t i) {
    per[i] = midgap_states(loop.pts[i].a, loop.pts[i].b, n_sites);
  });

  // Persistent ambiguity means the chain is too short to separate the two
  // edges; a short run is the expected hybridized pair at a crossing.
  int run = 0;
  for (int i = 0; i < 2 * m; ++i) {
    run = per[i % m].ambiguous > 0 ? run + 1 : 0;
    if (run > kMaxAmbiguousRun)
      throw LocalizationAmbiguous("left weight in [0.1, 0.9] for " + std::to_string(run) +
                                  " consecutive samples of " + loop.label +
                                  "; increase n_sites or samples");
    if (i >= m && run == 0) break;
  }

  int flow = 0;
  for (int i = 0; i < m; ++i) {
    if (per[i].kept.empty()) continue;
    int j = -1;
    for (int step = 1; step <= kMaxHole + 1; ++step) {
      if (!per[(i + step) % m].kept.empty()) {
        j = (i + step) % m;
        break;
      }
    }
    if (j < 0) continue;
    const double window_i = kWindowFraction * loop.pts[i].gap;
    for (const auto& st : per[i].kept) {
      const MidgapState* best = nullptr;
      double best_ov = 0.0;
      for (const auto& cand : per[j].kept) {
        const double ov = std::abs(dot(st.vec, cand.vec));
        if (ov > best_ov) {
          best_ov = ov;
          best = &cand;
        }
      }
      if (best == nullptr || best_ov < kOverlapThreshold) {
        // A state may legitimately leave the window near the band edge;
        // losing it while it is deep in the gap is a resolution failure.
        if (std::abs(st.energy) < 0.5 * window_i)
          throw TrackingLost("overlap " + std::to_string(best_ov) + " below threshold at sample " +
                             std::to_string(i) + " of " + loop.label);
        continue;
      }
      if (st.energy < 0.0 && best->energy > 0.0)
        ++flow;
      else if (st.energy > 0.0 && best->energy < 0.0)
        --flow;
    }
  }
  return flow;
}

int spectral_flow_analytic(const SurfacePair& s, const Loop& loop) {
  if (loop.loop_samples() < 3)
    throw ConfigError("spectral_flow_analytic needs at least 3 loop samples");
  if (loop.min_gap() <= kLoopGapTolerance)
    throw GapViolation("loop " + loop.label + " passes within gap tolerance of pi(W)");

  constexpr double kZero = 1e-14;
  constexpr double kSlopeTolerance = 1e-8;

  // Collapse repeated sample points (a concatenated path may revisit its
  // base), keeping the closing copy at the end.
  std::vector<Loop::Sample> pts;
  pts.reserve(loop.pts.size());
  for (int i = 0; i < loop.loop_samples(); ++i) {
    const auto& p = loop.pts[i];
    if (!pts.empty() && pts.back().kx == p.kx && pts.back().ky == p.ky) continue;
    pts.push_back(p);
  }
  if (pts.front().kx == pts.back().kx && pts.front().ky == pts.back().ky) pts.pop_back();
  const int m = static_cast<int>(pts.size());
  if (m < 3) throw ConfigError("loop collapses to fewer than 3 distinct samples");
  pts.push_back(pts.front());

  bool all_zero = true;
  for (int i = 0; i < m && all_zero; ++i) all_zero = std::abs(pts[i].b) < kZero;
  if (all_zero) {
    // b vanishes identically along the loop; that is fine in the gapped
    // region but ill-posed where the midgap level exists
    for (int i = 0; i < m; ++i)
      if (std::abs(pts[i].a) < 1.0)
        throw NonTransversalCrossing("b vanishes identically on " + loop.label +
                                     " inside |a| < 1");
    return 0;
  }

  int flow = 0;
  auto slope_sign_at = [&](double kx, double ky, double dx, double dy) {
    const auto [gx, gy] = s.grad_b_at(kx, ky);
    const double slope = gx * dx + gy * dy;
    if (std::abs(slope) < kSlopeTolerance * std::hypot(dx, dy))
      throw NonTransversalCrossing("b vanishes non-transversally on " + loop.label + " at (" +
                                   std::to_string(kx) + ", " + std::to_string(ky) + ")");
    return slope > 0.0 ? 1 : -1;
  };

  for (int i = 0; i < m; ++i) {
    const auto& p = pts[i];
    const auto& q = pts[i + 1];
    const double h0 = p.b, h1 = q.b;
    if (std::abs(h0) < kZero) {
      // crossing sitting exactly on a sample; count it at the head of a
      // zero run so a passage through the point is not double counted
      const double hprev = pts[(i + m - 1) % m].b;
      if (std::abs(hprev) >= kZero && std::abs(p.a) < 1.0)
        flow += slope_sign_at(p.kx, p.ky, q.kx - p.kx, q.ky - p.ky);
      continue;
    }
    if (std::abs(h1) < kZero || (h0 < 0) == (h1 < 0)) continue;
    double lo = 0.0, hi = 1.0, flo = h0;
    for (int k = 0; k < 80; ++k) {
      const double mid = 0.5 * (lo + hi);
      const double fm = s.b_at(p.kx + mid * (q.kx - p.kx), p.ky + mid * (q.ky - p.ky));
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
    const double t = 0.5 * (lo + hi);
    const double zx = p.kx + t * (q.kx - p.kx), zy = p.ky + t * (q.ky - p.ky);
    if (std::abs(s.a_at(zx, zy)) < 1.0)
      flow += slope_sign_at(zx, zy, q.kx - p.kx, q.ky - p.ky);
  }
  return flow;
}

}  // namespace weylbec
