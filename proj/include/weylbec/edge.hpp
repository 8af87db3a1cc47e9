#ifndef WEYLBEC_EDGE_HPP
#define WEYLBEC_EDGE_HPP

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weylbec/expr.hpp"
#include "weylbec/model.hpp"

namespace weylbec {

/// Dirichlet truncation of the half-line operator at fixed (a, b):
/// block tridiagonal with diagonal blocks V = [[b, a], [a, -b]] and hopping
/// A = [[0, 1], [0, 0]] between consecutive sites. In the site-major basis
/// (alpha_1, beta_1, alpha_2, ...) the matrix is real symmetric tridiagonal
/// with diagonal (b, -b, b, -b, ...) and off-diagonal (a, 1, a, 1, ..., a).
struct EdgeChain {
  double a = 0.0, b = 0.0;
  int n_sites = 0;
  std::vector<double> diag;      // size 2 n_sites
  std::vector<double> off_diag;  // size 2 n_sites - 1

  int dim() const { return 2 * n_sites; }
  /// Dense element accessor (for tests and inspection).
  double entry(int i, int j) const;
};

EdgeChain build_edge_chain(double a, double b, int n_sites);

struct EdgeEigenSystem {
  int dim = 0;
  std::vector<double> eigenvalues;   // ascending
  std::vector<double> left_weight;   // squared norm on sites 1..n_sites/2
  std::vector<double> vectors;       // column-major dim x dim

  std::span<const double> vector(int k) const {
    return {vectors.data() + static_cast<std::size_t>(k) * dim, static_cast<std::size_t>(dim)};
  }
};

/// Full symmetric tridiagonal eigendecomposition (LAPACK dstevd).
EdgeEigenSystem edge_spectrum(const EdgeChain& chain);

/// The discrete midgap level: E = b when |a| < 1, absent otherwise.
std::optional<double> analytic_edge_energy(double a, double b);

/// At a = 0 the operator additionally has the flat infinite-multiplicity
/// levels E = +-sqrt(b^2 + 1) at the band edges; reported separately from
/// the bound state.
std::optional<std::pair<double, double>> flat_band_energies(double a, double b);

/// Transfer matrix R with psi(n+1) = R psi(n) for the half-line eigenvalue
/// equation at energy E; det R = 1, and the discriminant of its
/// characteristic polynomial decides L^2 decay.
struct TransferData {
  std::array<std::array<double, 2>, 2> r{};
  double trace = 0.0;
  double det = 0.0;
  double discriminant = 0.0;
};

TransferData transfer_matrix(double a, double b, double energy);

/// A closed sampled loop on T^2 with the surface data cached per sample.
/// pts has loop_samples() + 1 entries; the last repeats the first without
/// wrapping, so segment interpolation never crosses the torus seam.
class Loop {
 public:
  struct Sample {
    double kx = 0.0, ky = 0.0;
    double a = 0.0, b = 0.0;
    double gap = 0.0;
  };

  std::vector<Sample> pts;
  std::string label;

  int loop_samples() const { return static_cast<int>(pts.size()) - 1; }
  double min_gap() const;
  Loop reversed() const;

  static Loop circle(const SurfacePair& s, double cx, double cy, double radius, int samples = 720);
  /// {kx0} x S^1, ky increasing.
  static Loop vertical(const SurfacePair& s, double kx0, int samples = 720);
  /// S^1 x {ky0}, kx increasing.
  static Loop horizontal(const SurfacePair& s, double ky0, int samples = 720);
  /// Closed polyline through the given vertices (not wrapped mid-segment).
  static Loop from_points(const SurfacePair& s, const std::vector<std::array<double, 2>>& vertices,
                          std::string label = "loop");
};

/// Signed count of negative-to-positive zero crossings of the midgap levels
/// of the truncated chains along the loop. Midgap states are kept when
/// localized on the left half (left_weight > 0.9); the right-edge mirror
/// states the finite chain adds are dropped (left_weight < 0.1).
int spectral_flow_numeric(const Loop& loop, int n_sites = 64);

/// Spectral flow from the closed-form edge dispersion E = b on |a| < 1:
/// the sum of sign(d(b o gamma)/ds) over the loop's arc crossings.
int spectral_flow_analytic(const SurfacePair& s, const Loop& loop);

}  // namespace weylbec

#endif
