#include "weylbec/model.hpp"

#include <utility>

namespace weylbec {

std::array<std::complex<double>, 2> Hermitian2::ground_state() const {
  const double lambda = radius();
  const std::complex<double> o = off();
  std::complex<double> v0, v1;
  // Two algebraically equivalent eigenvector formulas; pick the one whose
  // norm stays away from zero for the given sign of d.
  if (d > 0.0) {
    v0 = o;
    v1 = -(d + lambda);
  } else {
    v0 = d - lambda;
    v1 = std::conj(o);
  }
  double norm = std::sqrt(std::norm(v0) + std::norm(v1));
  v0 /= norm;
  v1 /= norm;
  // Gauge fix: rotate so the largest-modulus component is real positive.
  std::complex<double> anchor = std::abs(v0) >= std::abs(v1) ? v0 : v1;
  std::complex<double> phase = std::conj(anchor) / std::abs(anchor);
  return {v0 * phase, v1 * phase};
}

Hermitian2 local_hamiltonian(double a, double b, double theta) {
  return {b, a + std::cos(theta), std::sin(theta)};
}

Hermitian2 qwz_hamiltonian(int n, double u, double kx, double ky) {
  return {u + std::cos(n * kx) + std::cos(ky), std::sin(n * kx), -std::sin(ky)};
}

std::pair<double, double> conjugate_to_local(int n, double u, double kx) {
  return {u + std::cos(n * kx), std::sin(n * kx)};
}

Bands essential_spectrum_bands(double a, double b) {
  const double inner = std::hypot(b, std::abs(a) - 1.0);
  const double outer = std::hypot(b, std::abs(a) + 1.0);
  return {{-outer, -inner}, {inner, outer}};
}

BulkModel BulkModel::local_form(SurfacePair s) {
  BulkModel m;
  m.surfaces_ = std::make_shared<const SurfacePair>(std::move(s));
  return m;
}

BulkModel BulkModel::generic(Map f) {
  BulkModel m;
  m.map_ = std::move(f);
  return m;
}

Hermitian2 BulkModel::at(double kx, double ky, double kz) const {
  if (surfaces_)
    return local_hamiltonian(surfaces_->a_at(kx, ky), surfaces_->b_at(kx, ky), kz);
  return map_(kx, ky, kz);
}

}  // namespace weylbec
