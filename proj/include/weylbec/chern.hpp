#ifndef WEYLBEC_CHERN_HPP
#define WEYLBEC_CHERN_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "weylbec/model.hpp"
#include "weylbec/weyl.hpp"

namespace weylbec {

/// An N1 x N2 parameter grid of Hermitian matrices over a closed surface.
/// Torus topology wraps both directions; Capped keeps the first and last
/// rows as poles of a sphere (all columns of a pole row hold the same
/// matrix) and wraps only the second direction.
///
/// Orientation convention: the first index runs along the base direction
/// (ky, kx, the tube circle, or the polar angle), the second along the
/// fiber (kz, or the azimuth). With this ordering the lattice field
/// strength reproduces c1(QWZ, 0<u<2) = +1.
struct ClosedSurfaceGrid {
  enum class Topology { Torus, Capped };

  int n1 = 0, n2 = 0;  // nodes.size() == rows() * n2
  Topology topology = Topology::Torus;
  std::string label;
  std::vector<Hermitian2> nodes;

  int rows() const { return topology == Topology::Torus ? n1 : n1 + 1; }
  const Hermitian2& at(int i, int j) const { return nodes[static_cast<std::size_t>(i) * n2 + j]; }

  static ClosedSurfaceGrid torus(int n1, int n2,
                                 const std::function<Hermitian2(double, double)>& f,
                                 std::string label = "torus");
  /// (ky, kz) torus at fixed kx0.
  static ClosedSurfaceGrid slice_x(const BulkModel& m, double kx0, int grid_n = 200);
  /// (kx, kz) torus at fixed ky0.
  static ClosedSurfaceGrid slice_y(const BulkModel& m, double ky0, int grid_n = 200);
  /// (s, kz) torus over the anticlockwise circle of the given radius.
  static ClosedSurfaceGrid tube(const BulkModel& m, double cx, double cy, double radius,
                                int grid_n = 200);
  /// (polar, azimuth) sphere around a point of T^3, outward oriented.
  static ClosedSurfaceGrid sphere(const BulkModel& m, double wx, double wy, double wz,
                                  double radius, int n_polar = 200, int n_azimuth = 100);
};

struct ChernResult {
  int chern = 0;
  double residual = 0.0;  // |flux/2pi - chern|
  double min_gap = 0.0;   // min |lambda| over the grid
};

/// Lattice field-strength Chern number of the negative-eigenvalue bundle:
/// link variables from normalized eigenvector overlaps, plaquette phase in
/// (-pi, pi], c1 = (sum of phases) / 2pi rounded to the nearest integer.
/// Throws GapClosed if the surface is not gapped and NonIntegerResidual if
/// the rounding residual exceeds 0.01.
ChernResult fhs_chern_detailed(const ClosedSurfaceGrid& surface);
int fhs_chern(const ClosedSurfaceGrid& surface);

int chern_tube(const BulkModel& m, std::pair<double, double> center, double radius,
               int grid_n = 200);

/// Chern number on the sphere around a Weyl point; this is the point's
/// charge (chirality).
int chern_sphere(const BulkModel& m, const WeylPoint& w, double radius, int n_polar = 200,
                 int n_azimuth = 100);

}  // namespace weylbec

#endif
