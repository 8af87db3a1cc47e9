#ifndef WEYLBEC_MODEL_HPP
#define WEYLBEC_MODEL_HPP

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>

#include "weylbec/expr.hpp"

namespace weylbec {

/// Traceless 2x2 Hermitian matrix [[d, o], [conj(o), -d]] stored by its
/// three real parameters, so Hermiticity and tracelessness hold exactly.
struct Hermitian2 {
  double d = 0.0;
  double o_re = 0.0;
  double o_im = 0.0;

  std::complex<double> off() const { return {o_re, o_im}; }

  /// |lambda| of the eigenvalue pair +-lambda.
  double radius() const { return std::sqrt(d * d + o_re * o_re + o_im * o_im); }

  /// Normalized eigenvector of the negative eigenvalue. The phase is fixed
  /// deterministically: the largest-modulus component is made real positive.
  std::array<std::complex<double>, 2> ground_state() const;
};

/// H_loc(a, b, theta): d = b, o = a + e^{i theta}.
Hermitian2 local_hamiltonian(double a, double b, double theta);

/// sin(n kx) sx + sin(ky) sy + (u + cos(n kx) + cos(ky)) sz.
/// Invertible on all of T^2 iff u is not in {0, +-2}.
Hermitian2 qwz_hamiltonian(int n, double u, double kx, double ky);

/// The surface data (a_n(kx), b_n(kx)) = (u + cos(n kx), sin(n kx)) of the
/// conjugated model T* H_n(kx, ky) T = H_loc(a_n(kx), b_n(kx), ky).
std::pair<double, double> conjugate_to_local(int n, double u, double kx);

struct Interval {
  double lo = 0.0, hi = 0.0;
};

/// Essential spectrum of the half-line operator at fixed (a, b):
/// +-[sqrt(b^2 + (|a|-1)^2), sqrt(b^2 + (|a|+1)^2)].
struct Bands {
  Interval lower, upper;
};

Bands essential_spectrum_bands(double a, double b);

/// Half-width of the central gap, sqrt(b^2 + (|a|-1)^2).
inline double essential_gap(double a, double b) {
  return std::hypot(b, std::abs(a) - 1.0);
}

/// A bulk Hamiltonian over T^3: either the local form driven by a
/// SurfacePair, or an arbitrary Hermitian2-valued map.
class BulkModel {
 public:
  using Map = std::function<Hermitian2(double kx, double ky, double kz)>;

  static BulkModel local_form(SurfacePair s);
  static BulkModel generic(Map f);

  Hermitian2 at(double kx, double ky, double kz) const;

  /// Non-null iff this is a local-form model.
  const SurfacePair* local() const { return surfaces_.get(); }

 private:
  std::shared_ptr<const SurfacePair> surfaces_;
  Map map_;
};

}  // namespace weylbec

#endif
