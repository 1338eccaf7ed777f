#pragma once

// Shared fixtures and oracles for the test suite. Oracles deliberately use
// a different route than the code under test: direct bracketed summation,
// closed forms, and hand-built models small enough to check on paper.

#include <torsionlab/chain.hpp>
#include <torsionlab/numerics.hpp>
#include <torsionlab/topology.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

namespace testlab {

using torsionlab::ChainComplex;
using torsionlab::EdgeCocycle;
using torsionlab::Matrix;
using torsionlab::SimplicialComplex;
using torsionlab::Vector;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline Matrix rotation2(double theta) {
  Matrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

// ---------------------------------------------------------------------------
// Series oracles.

// sum_{k>=0} (a+k)^{-s} for s > 1 by direct descending summation, with the
// tail bracketed by integrals: int_n^inf f <= tail <= int_{n-1}^inf f for
// decreasing f. Returns the bracket midpoint; half_width bounds the error.
struct BracketedSum {
  double value = 0.0;
  double half_width = 0.0;
};

inline BracketedSum hurwitz_direct(double s, double a, long n = 400000) {
  double partial = 0.0;
  for (long k = n - 1; k >= 0; --k) partial += std::pow(a + k, -s);
  double lo = std::pow(a + n, 1.0 - s) / (s - 1.0);
  double hi = std::pow(a + n - 1.0, 1.0 - s) / (s - 1.0);
  return {partial + 0.5 * (lo + hi), 0.5 * (hi - lo) + 1e-14 * partial};
}

// Same bracket for the s-derivative -sum log(a+k) (a+k)^{-s}; the summand
// decreases once a + k > e^{1/s}, which the n floor guarantees.
inline BracketedSum hurwitz_deriv_direct(double s, double a, long n = 400000) {
  double partial = 0.0;
  for (long k = n - 1; k >= 0; --k) {
    partial -= std::log(a + k) * std::pow(a + k, -s);
  }
  auto tail = [&](double x) {
    // -int_x^inf log(a+u) (a+u)^{-s} du, closed form via integration by parts
    double b = a + x;
    return -(std::pow(b, 1.0 - s) / (s - 1.0)) *
           (std::log(b) + 1.0 / (s - 1.0));
  };
  double lo = tail(static_cast<double>(n));
  double hi = tail(static_cast<double>(n) - 1.0);
  if (lo > hi) std::swap(lo, hi);
  return {partial + 0.5 * (lo + hi),
          0.5 * (hi - lo) + 1e-14 * std::abs(partial)};
}

// ---------------------------------------------------------------------------
// Random matrices.

inline Matrix random_orthogonal(std::mt19937& rng, int n) {
  std::normal_distribution<double> g;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix r = qr.matrixQR();
  for (int i = 0; i < n; ++i) {
    if (r(i, i) < 0) q.col(i) *= -1.0;
  }
  return q;
}

// Well-conditioned random basis with entries bounded by ~1.6/0.6: two
// orthogonal factors around a diagonal of scales in [0.6, 1.6].
inline Matrix random_basis(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> scale(0.6, 1.6);
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = scale(rng);
  return random_orthogonal(rng, n) * d * random_orthogonal(rng, n);
}

// ---------------------------------------------------------------------------
// Chain-complex fixtures.

inline ChainComplex two_term(double c) {
  Matrix d(1, 1);
  d << c;
  return torsionlab::make_complex({1, 1}, {d}, "two term");
}

inline ChainComplex point_complex() {
  return torsionlab::make_complex({1}, {}, "point");
}

inline ChainComplex two_points() {
  return torsionlab::make_complex({2}, {}, "two points");
}

inline ChainComplex interval_chain() {
  Matrix d(2, 1);
  d << -1, 1;
  return torsionlab::make_complex({2, 1}, {d}, "interval");
}

// m vertices, m edges around a cycle: d e_i = v_{i+1} - v_i.
inline ChainComplex circle_chain(int m) {
  Matrix d = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    d(i, i) -= 1.0;
    d((i + 1) % m, i) += 1.0;
  }
  return torsionlab::make_complex({m, m}, {d}, "circle chain");
}

// Two vertices joined by three parallel edges; Euler characteristic -1.
inline ChainComplex theta_graph() {
  Matrix d(2, 3);
  d << -1, -1, -1, 1, 1, 1;
  return torsionlab::make_complex({2, 3}, {d}, "theta graph");
}

// Random acyclic complex with known ranks: C_q = A_q + B_q with
// dim A_q = r_q, dim B_q = r_{q+1}, and the canonical map sending A_q
// identically onto B_{q-1}, conjugated by well-conditioned bases. Entries
// stay in [-3, 3] because each basis factor has 2-norm <= 1.6 and the
// inverse factor 2-norm <= 1/0.6.
inline ChainComplex random_acyclic(std::mt19937& rng) {
  std::uniform_int_distribution<int> length(2, 4);
  std::uniform_int_distribution<int> rank(1, 4);
  int m = length(rng);
  std::vector<int> r(m + 2, 0);
  for (int q = 1; q <= m; ++q) r[q] = rank(rng);
  std::vector<torsionlab::Index> dims(m + 1);
  for (int q = 0; q <= m; ++q) dims[q] = r[q] + r[q + 1];
  std::vector<Matrix> bases(m + 1);
  for (int q = 0; q <= m; ++q) {
    bases[q] = random_basis(rng, static_cast<int>(dims[q]));
  }
  std::vector<Matrix> maps;
  for (int q = 1; q <= m; ++q) {
    Matrix canonical = Matrix::Zero(dims[q - 1], dims[q]);
    canonical.block(r[q - 1], 0, r[q], r[q]) = Matrix::Identity(r[q], r[q]);
    maps.push_back(bases[q - 1] * canonical *
                   bases[q].colPivHouseholderQr().inverse());
  }
  return torsionlab::make_complex(dims, maps, "random acyclic");
}

// ---------------------------------------------------------------------------
// Simplicial fixtures.

// Boundary of the octahedron: vertices 0..5 with antipodal pairs (0,1),
// (2,3), (4,5); the 8 faces pick one vertex from each pair. A 2-sphere.
inline SimplicialComplex octahedron() {
  std::vector<std::vector<int>> faces;
  for (int a : {0, 1}) {
    for (int b : {2, 3}) {
      for (int c : {4, 5}) faces.push_back({a, b, c});
    }
  }
  return torsionlab::complex_from_simplices(faces);
}

// Triangulated cylinder over a 3-vertex circle: bottom 0,1,2, top 3,4,5,
// vertex i + 3 above vertex i, each square split along a diagonal.
inline SimplicialComplex cylinder_complex() {
  return torsionlab::complex_from_simplices({{0, 1, 4},
                                             {0, 3, 4},
                                             {1, 2, 5},
                                             {1, 4, 5},
                                             {0, 2, 3},
                                             {2, 3, 5}});
}

// Flat cocycle on the cylinder pulled back from the circle model placing
// rotation by theta on the bottom edge (0, 1): the projection collapses
// each vertical edge, so the three edges covering (0, 1) carry the
// rotation and every other edge the identity.
inline EdgeCocycle cylinder_cocycle(double theta) {
  EdgeCocycle rho;
  rho.fiber_dim = 2;
  Matrix r = rotation2(theta);
  rho.set(0, 1, r);
  rho.set(3, 4, r);
  rho.set(0, 4, r);
  return rho;
}

// ---------------------------------------------------------------------------
// Closed forms.

inline double lens_tau(int p, int q_star, int k) {
  double s1 = std::sin(kPi * k / p);
  double s2 = std::sin(kPi * k * q_star / p);
  return 16.0 * s1 * s1 * s2 * s2;
}

}  // namespace testlab
