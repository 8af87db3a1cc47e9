#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "weylbec/model.hpp"

using namespace weylbec;

namespace {

constexpr double pi = std::numbers::pi;
using Mat2 = Eigen::Matrix2cd;

Mat2 dense(const Hermitian2& h) {
  Mat2 m;
  m << std::complex<double>(h.d, 0), h.off(), std::conj(h.off()), std::complex<double>(-h.d, 0);
  return m;
}

// independent eigensolve oracle
std::pair<double, double> eig2(const Hermitian2& h) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(dense(h));
  return {es.eigenvalues()(0), es.eigenvalues()(1)};
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("local Hamiltonian at the distinguished points") {
  // (1, 0, pi) is a Weyl point of the local model: the matrix vanishes
  Hermitian2 w = local_hamiltonian(1.0, 0.0, pi);
  CHECK(w.radius() < 1e-15);

  Hermitian2 h = local_hamiltonian(0.0, 0.0, 0.0);
  CHECK(h.d == 0.0);
  CHECK(h.o_re == 1.0);
  CHECK(h.o_im == 0.0);
  CHECK(h.radius() == 1.0);

  Hermitian2 g = local_hamiltonian(2.0, 1.0, pi / 2);
  auto [lo, hi] = eig2(g);
  CHECK(lo == doctest::Approx(-std::sqrt(6.0)).epsilon(1e-14));
  CHECK(hi == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));
  CHECK(g.radius() == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));
}

TEST_CASE("eigenvalues come in +- pairs with zero trace") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 200; ++t) {
    Hermitian2 h = local_hamiltonian(u(rng), u(rng), u(rng));
    auto [lo, hi] = eig2(h);
    CHECK(std::abs(lo + hi) < 1e-14);              // trace zero
    CHECK(std::abs(hi - h.radius()) < 1e-13);      // +-sqrt(d^2+|o|^2)
  }
}

TEST_CASE("ground state is a unit eigenvector with the pinned gauge") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 200; ++t) {
    Hermitian2 h{u(rng), u(rng), u(rng)};
    if (h.radius() < 1e-6) continue;
    const auto v = h.ground_state();
    Mat2 m = dense(h);
    Eigen::Vector2cd vec(v[0], v[1]);
    CHECK((m * vec + h.radius() * vec).norm() < 1e-13);
    CHECK(std::abs(vec.norm() - 1.0) < 1e-14);
    // largest-modulus component real positive
    const auto& anchor = std::abs(v[0]) >= std::abs(v[1]) ? v[0] : v[1];
    CHECK(anchor.imag() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(anchor.real() > 0.0);
  }
}

TEST_CASE("qwz family at the corner points") {
  Hermitian2 h = qwz_hamiltonian(1, 1.0, 0.0, 0.0);
  CHECK(h.d == 3.0);
  CHECK(h.o_re == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(h.o_im) < 1e-15);

  Hermitian2 g = qwz_hamiltonian(1, 1.0, pi, pi);
  CHECK(g.d == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(std::abs(g.o_re) < 1e-15);

  Hermitian2 f = qwz_hamiltonian(2, 1.5, pi / 4, 0.0);
  CHECK(f.o_re == doctest::Approx(1.0).epsilon(1e-15));  // sin(pi/2)
  CHECK(f.d == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("conjugation to the local form") {
  {
    auto [a, b] = conjugate_to_local(1, 1.5, 0.0);
    CHECK(a == 2.5);
    CHECK(b == 0.0);
  }
  {
    auto [a, b] = conjugate_to_local(1, 1.5, pi);
    CHECK(a == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(b) < 1e-15);
  }
  {
    auto [a, b] = conjugate_to_local(3, 1.5, pi / 6);
    CHECK(a == doctest::Approx(1.5).epsilon(1e-15));  // cos(pi/2) = 0
    CHECK(b == doctest::Approx(1.0).epsilon(1e-15));  // sin(pi/2) = 1
  }

  // T* H_n(kx, ky) T = H_loc(a_n(kx), b_n(kx), ky) with T the Hadamard matrix
  Mat2 T;
  T << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> angle(0.0, 2 * pi);
  for (int t = 0; t < 100; ++t) {
    const int n = static_cast<int>(rng() % 7) - 3;
    const double u = 1.5;
    const double kx = angle(rng), ky = angle(rng);
    Mat2 lhs = T.adjoint() * dense(qwz_hamiltonian(n, u, kx, ky)) * T;
    auto [a, b] = conjugate_to_local(n, u, kx);
    Mat2 rhs = dense(local_hamiltonian(a, b, ky));
    CHECK((lhs - rhs).norm() < 1e-12);
  }
}

TEST_CASE("essential spectrum bands") {
  {
    Bands bb = essential_spectrum_bands(0.0, 0.0);
    CHECK(bb.lower.lo == -1.0);
    CHECK(bb.lower.hi == -1.0);
    CHECK(bb.upper.lo == 1.0);
    CHECK(bb.upper.hi == 1.0);
  }
  {
    Bands bb = essential_spectrum_bands(1.0, 0.0);  // gap closes
    CHECK(bb.lower.lo == -2.0);
    CHECK(bb.lower.hi == 0.0);
    CHECK(bb.upper.lo == 0.0);
    CHECK(bb.upper.hi == 2.0);
  }
  {
    // b^2 + (|a| +- 1)^2 = 0.25 + 2.25 and 0.25 + 0.25, cross-checked by the
    // brute-force sweep below
    Bands bb = essential_spectrum_bands(0.5, 0.5);
    CHECK(bb.lower.lo == doctest::Approx(-std::sqrt(2.5)).epsilon(1e-15));
    CHECK(bb.lower.hi == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-15));
  }
}

TEST_CASE("band edges match a brute-force sweep over theta") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  for (int t = 0; t < 100; ++t) {
    const double a = u(rng), b = u(rng);
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double lambda = local_hamiltonian(a, b, 2 * pi * i / 10000).radius();
      lo = std::min(lo, lambda);
      hi = std::max(hi, lambda);
    }
    Bands bb = essential_spectrum_bands(a, b);
    CHECK(std::abs(bb.upper.lo - lo) < 1e-9);
    CHECK(std::abs(bb.upper.hi - hi) < 1e-9);
    CHECK(std::abs(bb.lower.hi + lo) < 1e-9);
    CHECK(std::abs(bb.lower.lo + hi) < 1e-9);
  }
}

TEST_CASE("local-form bulk model evaluates through the surfaces") {
  SurfacePair s = SurfacePair::parse("2 + cos(kx) + cos(ky)", "sin(ky)");
  BulkModel m = BulkModel::local_form(s);
  REQUIRE(m.local() != nullptr);
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> angle(0.0, 2 * pi);
  for (int t = 0; t < 20; ++t) {
    const double kx = angle(rng), ky = angle(rng), kz = angle(rng);
    Hermitian2 h = m.at(kx, ky, kz);
    Hermitian2 ref = local_hamiltonian(s.a_at(kx, ky), s.b_at(kx, ky), kz);
    CHECK(h.d == ref.d);
    CHECK(h.o_re == ref.o_re);
    CHECK(h.o_im == ref.o_im);
  }

  BulkModel q = BulkModel::generic(
      [](double kx, double ky, double) { return qwz_hamiltonian(1, 1.0, kx, ky); });
  CHECK(q.local() == nullptr);
  CHECK(q.at(0, 0, 0).d == 3.0);
}

}  // TEST_SUITE
