#include "weylbec/chern.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "weylbec/errors.hpp"
#include "weylbec/parallel.hpp"
#include "weylbec/torus.hpp"

namespace weylbec {

namespace {

constexpr double kGapFloor = 1e-9;
constexpr double kResidualBound = 0.01;

using Vec2 = std::array<std::complex<double>, 2>;

std::complex<double> overlap(const Vec2& u, const Vec2& v) {
  return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
}

}  // namespace

ClosedSurfaceGrid ClosedSurfaceGrid::torus(int n1, int n2,
                                           const std::function<Hermitian2(double, double)>& f,
                                           std::string label) {
  ClosedSurfaceGrid g;
  g.n1 = n1;
  g.n2 = n2;
  g.topology = Topology::Torus;
  g.label = std::move(label);
  g.nodes.resize(static_cast<std::size_t>(n1) * n2);
  detail::parallel_for(static_cast<std::size_t>(n1), [&](std::size_t i) {
    const double u = two_pi * static_cast<double>(i) / n1;
    for (int j = 0; j < n2; ++j) g.nodes[i * n2 + j] = f(u, two_pi * j / n2);
  });
  return g;
}

ClosedSurfaceGrid ClosedSurfaceGrid::slice_x(const BulkModel& m, double kx0, int grid_n) {
  return torus(
      grid_n, grid_n, [&](double ky, double kz) { return m.at(kx0, ky, kz); },
      "slice kx=" + std::to_string(kx0));
}

ClosedSurfaceGrid ClosedSurfaceGrid::slice_y(const BulkModel& m, double ky0, int grid_n) {
  return torus(
      grid_n, grid_n, [&](double kx, double kz) { return m.at(kx, ky0, kz); },
      "slice ky=" + std::to_string(ky0));
}

ClosedSurfaceGrid ClosedSurfaceGrid::tube(const BulkModel& m, double cx, double cy, double radius,
                                          int grid_n) {
  return torus(
      grid_n, grid_n,
      [&](double s, double kz) {
        return m.at(cx + radius * std::cos(s), cy + radius * std::sin(s), kz);
      },
      "tube around (" + std::to_string(cx) + ", " + std::to_string(cy) + ")");
}

ClosedSurfaceGrid ClosedSurfaceGrid::sphere(const BulkModel& m, double wx, double wy, double wz,
                                            double radius, int n_polar, int n_azimuth) {
  ClosedSurfaceGrid g;
  g.n1 = n_polar;
  g.n2 = n_azimuth;
  g.topology = Topology::Capped;
  g.label = "sphere around (" + std::to_string(wx) + ", " + std::to_string(wy) + ", " +
            std::to_string(wz) + ")";
  g.nodes.resize(static_cast<std::size_t>(n_polar + 1) * n_azimuth);
  detail::parallel_for(static_cast<std::size_t>(n_polar) + 1, [&](std::size_t i) {
    const double theta = std::numbers::pi * static_cast<double>(i) / n_polar;
    for (int j = 0; j < n_azimuth; ++j) {
      const double phi = two_pi * j / n_azimuth;
      g.nodes[i * n_azimuth + j] = m.at(wx + radius * std::sin(theta) * std::cos(phi),
                                        wy + radius * std::sin(theta) * std::sin(phi),
                                        wz + radius * std::cos(theta));
    }
  });
  // Pole rows describe a single point each; keep them exactly constant so
  // the links along a pole row carry no phase.
  for (int j = 1; j < n_azimuth; ++j) {
    g.nodes[j] = g.nodes[0];
    g.nodes[static_cast<std::size_t>(n_polar) * n_azimuth + j] =
        g.nodes[static_cast<std::size_t>(n_polar) * n_azimuth];
  }
  return g;
}

ChernResult fhs_chern_detailed(const ClosedSurfaceGrid& surface) {
  const int rows = surface.rows();
  const int n2 = surface.n2;
  const std::size_t count = static_cast<std::size_t>(rows) * n2;

  double min_gap = surface.nodes.empty() ? 0.0 : surface.nodes[0].radius();
  int bad_i = -1, bad_j = -1;
  for (std::size_t k = 0; k < count; ++k) {
    const double r = surface.nodes[k].radius();
    if (r < min_gap) min_gap = r;
    if (r <= kGapFloor && bad_i < 0) {
      bad_i = static_cast<int>(k) / n2;
      bad_j = static_cast<int>(k) % n2;
    }
  }
  if (bad_i >= 0)
    throw GapClosed("gap closed on " + surface.label + " at node (" + std::to_string(bad_i) +
                    ", " + std::to_string(bad_j) + ")");

  std::vector<Vec2> evec(count);
  detail::parallel_for(count, [&](std::size_t k) { evec[k] = surface.nodes[k].ground_state(); });

  const int prow = rows == surface.n1 ? rows : rows - 1;  // plaquette rows
  std::vector<double> phases(static_cast<std::size_t>(prow) * n2);
  detail::parallel_for(static_cast<std::size_t>(prow), [&](std::size_t i) {
    const std::size_t inext = (static_cast<int>(i) + 1) % rows;
    for (int j = 0; j < n2; ++j) {
      const int jn = (j + 1) % n2;
      const Vec2& u00 = evec[i * n2 + j];
      const Vec2& u10 = evec[inext * n2 + j];
      const Vec2& u01 = evec[i * n2 + jn];
      const Vec2& u11 = evec[inext * n2 + jn];
      phases[i * n2 + j] = std::arg(overlap(u00, u10) * overlap(u10, u11) * overlap(u11, u01) *
                                    overlap(u01, u00));
    }
  });

  const double flux = detail::pairwise_sum(phases) / two_pi;
  const double rounded = std::round(flux);
  ChernResult res{static_cast<int>(rounded), std::abs(flux - rounded), min_gap};
  if (res.residual > kResidualBound)
    throw NonIntegerResidual("plaquette sum " + std::to_string(flux) + " on " + surface.label +
                             " is not near an integer; grid too coarse");
  return res;
}

int fhs_chern(const ClosedSurfaceGrid& surface) { return fhs_chern_detailed(surface).chern; }

int chern_tube(const BulkModel& m, std::pair<double, double> center, double radius, int grid_n) {
  return fhs_chern(ClosedSurfaceGrid::tube(m, center.first, center.second, radius, grid_n));
}

int chern_sphere(const BulkModel& m, const WeylPoint& w, double radius, int n_polar,
                 int n_azimuth) {
  return fhs_chern(ClosedSurfaceGrid::sphere(m, w.kx, w.ky, w.kz, radius, n_polar, n_azimuth));
}

}  // namespace weylbec
