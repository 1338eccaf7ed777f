#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <torsionlab/errors.hpp>
#include <torsionlab/numerics.hpp>

#include "helpers.hpp"

#include <cmath>
#include <random>

using namespace torsionlab;
using namespace torsionlab::numerics;

namespace {
constexpr double kPi = testlab::kPi;
}

TEST_CASE("svd_rank on hand-built matrices") {
  Matrix m(2, 2);
  m << 1, 2, 2, 4;  // rank one, singular values 5 and 0
  auto d = svd_rank(m);
  CHECK(d.rank == 1);
  CHECK(std::abs(d.singular_values(0) - 5.0) < 1e-12);
  CHECK(d.image_basis.cols() == 1);
  CHECK(d.kernel_basis.cols() == 1);
  // image spans (1, 2)/sqrt(5) up to sign
  Vector u(2);
  u << 1.0 / std::sqrt(5.0), 2.0 / std::sqrt(5.0);
  CHECK(std::abs(std::abs(u.dot(d.image_basis.col(0))) - 1.0) < 1e-12);
  // kernel vector is annihilated
  CHECK((m * d.kernel_basis).norm() < 1e-12);
}

TEST_CASE("svd_rank of a zero matrix is zero, not full") {
  auto d = svd_rank(Matrix::Zero(3, 4));
  CHECK(d.rank == 0);
  CHECK(d.image_basis.cols() == 0);
  CHECK(d.kernel_basis.cols() == 4);
  CHECK((d.kernel_basis.transpose() * d.kernel_basis -
         Matrix::Identity(4, 4))
            .norm() < 1e-12);
  // same for pure roundoff noise: the cutoff has an absolute floor
  auto n = svd_rank(Matrix::Constant(3, 3, 1e-15));
  CHECK(n.rank == 0);
}

TEST_CASE("svd_rank of an orthogonal matrix is full") {
  std::mt19937 rng(7);
  for (int n : {1, 3, 6}) {
    Matrix q = testlab::random_orthogonal(rng, n);
    auto d = svd_rank(q);
    CHECK(d.rank == n);
    CHECK(d.kernel_basis.cols() == 0);
    CHECK(std::abs(d.singular_values(0) - 1.0) < 1e-12);
    CHECK(std::abs(d.singular_values(n - 1) - 1.0) < 1e-12);
  }
}

TEST_CASE("log_abs_det closed forms") {
  CHECK(log_abs_det(Matrix::Identity(4, 4)) == doctest::Approx(0.0));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = -3.0;
  CHECK(std::abs(log_abs_det(d) - std::log(6.0)) < 1e-13);
  CHECK(std::abs(log_abs_det(testlab::rotation2(0.83))) < 1e-13);
  // empty matrix: det of nothing is 1
  CHECK(log_abs_det(Matrix(0, 0)) == 0.0);
}

TEST_CASE("log_abs_det against a known spectrum") {
  std::mt19937 rng(11);
  Matrix q = testlab::random_orthogonal(rng, 5);
  Vector ev(5);
  ev << 0.03, 0.7, 1.0, 4.0, 250.0;
  Matrix a = q * ev.asDiagonal() * q.transpose();
  double expected = ev.array().log().sum();
  CHECK(std::abs(log_abs_det(a) - expected) < 1e-10);
}

TEST_CASE("log_abs_det rejects singular input") {
  Matrix m(2, 2);
  m << 1, 2, 2, 4;
  CHECK_THROWS_AS(log_abs_det(m), SingularityError);
  try {
    log_abs_det(m);
  } catch (const SingularityError& e) {
    CHECK(e.smallest_singular_value() < 1e-12);
  }
}

TEST_CASE("condition_number") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 10.0;
  d(1, 1) = 0.1;
  CHECK(std::abs(condition_number(d) - 100.0) < 1e-9);
  CHECK(std::isinf(condition_number(Matrix::Zero(2, 2))));
}

TEST_CASE("min_norm_solve returns the pseudo-inverse solution") {
  // a has a one-dimensional kernel; the minimum-norm solution must be
  // orthogonal to it.
  Matrix a(2, 3);
  a << 1, 0, 1, 0, 1, 0;
  Matrix rhs(2, 1);
  rhs << 2, 3;
  Matrix x = min_norm_solve(a, rhs);
  CHECK((a * x - rhs).norm() < 1e-12);
  Vector kernel(3);
  kernel << 1, 0, -1;  // a * kernel = 0
  CHECK(std::abs(kernel.dot(x.col(0))) < 1e-12);

  // exactly solvable square system
  Matrix b(2, 2);
  b << 2, 1, 1, 3;
  Matrix y = min_norm_solve(b, rhs);
  CHECK((b * y - rhs).norm() < 1e-12);
}

TEST_CASE("sym_eig on a hand diagonalizable matrix") {
  Matrix m(2, 2);
  m << 2, 1, 1, 2;  // eigenvalues 1, 3
  auto e = sym_eig(m);
  CHECK(std::abs(e.values(0) - 1.0) < 1e-12);
  CHECK(std::abs(e.values(1) - 3.0) < 1e-12);
  Matrix rebuilt = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
  CHECK((rebuilt - m).norm() < 1e-12);
  CHECK((e.vectors.transpose() * e.vectors - Matrix::Identity(2, 2)).norm() <
        1e-12);
}

TEST_CASE("sym_eig rejects an asymmetric matrix") {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(sym_eig(m), InputError);
}

TEST_CASE("riemann zeta values against closed forms") {
  // pi^2/6, Apery's constant, pi^4/90: none of these routes through an
  // Euler-Maclaurin tail.
  CHECK(std::abs(riemann_zeta(2.0).value - kPi * kPi / 6.0) < 1e-12);
  CHECK(std::abs(riemann_zeta(3.0).value - 1.2020569031595942854) < 1e-12);
  CHECK(std::abs(riemann_zeta(4.0).value - kPi * kPi * kPi * kPi / 90.0) <
        1e-12);
  // special values of the continuation
  CHECK(std::abs(riemann_zeta(0.0).value - (-0.5)) < 1e-12);
  CHECK(std::abs(riemann_zeta(-1.0).value - (-1.0 / 12.0)) < 1e-12);
  CHECK(std::abs(riemann_zeta(-2.0).value) < 1e-12);
  CHECK(std::abs(riemann_zeta(0.5).value - (-1.4603545088095868129)) < 1e-11);
  // derivative at zero: -log(2 pi)/2
  CHECK(std::abs(riemann_zeta(0.0).derivative - (-0.5 * std::log(2.0 * kPi))) <
        1e-12);
}

TEST_CASE("hurwitz zeta against direct bracketed sums") {
  for (double s : {2.5, 3.0, 4.0}) {
    for (double a : {0.3, 0.7, 1.0}) {
      auto oracle = testlab::hurwitz_direct(s, a);
      double got = hurwitz_zeta(s, a).value;
      CAPTURE(s);
      CAPTURE(a);
      CHECK(std::abs(got - oracle.value) < oracle.half_width + 1e-12);
      auto doracle = testlab::hurwitz_deriv_direct(s, a);
      double dgot = hurwitz_zeta(s, a).derivative;
      CHECK(std::abs(dgot - doracle.value) < doracle.half_width + 1e-11);
    }
  }
}

TEST_CASE("hurwitz zeta special values of the continuation") {
  // zeta(0, a) = 1/2 - a and zeta(-1, a) = -(a^2 - a + 1/6)/2 exactly
  for (double a : {0.1, 0.25, 0.5, 0.9, 1.0}) {
    CAPTURE(a);
    CHECK(std::abs(hurwitz_zeta(0.0, a).value - (0.5 - a)) < 1e-12);
    double b2 = a * a - a + 1.0 / 6.0;
    CHECK(std::abs(hurwitz_zeta(-1.0, a).value - (-0.5 * b2)) < 1e-12);
    // zeta(-2, a) = -B_3(a)/3
    double b3 = a * a * a - 1.5 * a * a + 0.5 * a;
    CHECK(std::abs(hurwitz_zeta(-2.0, a).value - (-b3 / 3.0)) < 1e-12);
  }
  // zeta(s, 1/2) = (2^s - 1) zeta(s)
  for (double s : {-1.5, -0.5, 0.0, 2.0, 3.5}) {
    CAPTURE(s);
    double lhs = hurwitz_zeta(s, 0.5).value;
    double rhs = (std::pow(2.0, s) - 1.0) * riemann_zeta(s).value;
    CHECK(std::abs(lhs - rhs) < 1e-11);
  }
}

TEST_CASE("hurwitz zeta derivative at zero: reflection closed form") {
  // zeta'(0, a) + zeta'(0, 1-a) = log(pi / sin(pi a)) - log(2 pi)
  for (double a : {1.0 / 7.0, 0.2, 0.5, 0.61}) {
    CAPTURE(a);
    double lhs = hurwitz_zeta(0.0, a).derivative +
                 hurwitz_zeta(0.0, 1.0 - a).derivative;
    double rhs = std::log(kPi / std::sin(kPi * a)) - std::log(2.0 * kPi);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
  // zeta'(0, 1/2) = -log(2)/2 on its own
  CHECK(std::abs(hurwitz_zeta(0.0, 0.5).derivative + 0.5 * std::log(2.0)) <
        1e-12);
}

TEST_CASE("hurwitz zeta derivative matches finite differences of the value") {
  // h is chosen large enough that the ~1e-12 wobble of the continued
  // values does not dominate the quotient.
  double h = 1e-4;
  for (double s : {-2.5, -1.0, 0.0, 0.3, 2.0}) {
    for (double a : {0.3, 1.0}) {
      CAPTURE(s);
      CAPTURE(a);
      double fd = (hurwitz_zeta(s + h, a).value -
                   hurwitz_zeta(s - h, a).value) /
                  (2.0 * h);
      CHECK(std::abs(hurwitz_zeta(s, a).derivative - fd) < 1e-6);
    }
  }
}

TEST_CASE("hurwitz zeta domain") {
  CHECK_THROWS_AS(hurwitz_zeta(1.0, 0.5), PoleError);
  CHECK_THROWS_AS(hurwitz_zeta(1.0 + 1e-12, 0.5), PoleError);
  CHECK_THROWS_AS(hurwitz_zeta(2.0, 0.0), InputError);
  CHECK_THROWS_AS(hurwitz_zeta(2.0, 1.5), InputError);
  CHECK_THROWS_AS(hurwitz_zeta(2.0, -0.5), InputError);
  // close to the pole but outside the guard: finite and large
  double near = hurwitz_zeta(1.0 + 1e-6, 1.0).value;
  CHECK(near > 1e5);
}

TEST_CASE("extended precision agrees with double and sharpens it") {
  for (double s : {-1.0, 0.0, 0.5, 3.0}) {
    for (double a : {0.3, 1.0}) {
      if (std::abs(s - 1.0) < 0.1) continue;
      auto d = hurwitz_zeta(s, a, Precision::kDouble);
      auto x = hurwitz_zeta(s, a, Precision::kExtended);
      CAPTURE(s);
      CAPTURE(a);
      CHECK(std::abs(d.value - x.value) < 1e-11);
      CHECK(std::abs(d.derivative - x.derivative) < 1e-10);
    }
  }
  // sharper than double on a closed form
  double got = hurwitz_zeta(0.0, 0.5, Precision::kExtended).derivative;
  CHECK(std::abs(got + 0.5 * std::log(2.0)) < 1e-14);
}
