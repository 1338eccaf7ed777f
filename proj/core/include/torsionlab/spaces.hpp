#pragma once

#include <utility>
#include <vector>

#include "torsionlab/spectrum.hpp"
#include "torsionlab/topology.hpp"

namespace torsionlab {

/// Parameters of a lens space L(p, q) together with a character index k.
/// q_star is the inverse of q mod p. k = 0 names the trivial character
/// (allowed so the degenerate, non-acyclic complex can be inspected);
/// k in [1, p-1] gives the acyclic twisted complexes whose torsions
/// classify these spaces.
struct LensModel {
  int p = 0;
  int q = 0;
  int q_star = 0;
  int k = 0;
};

/// Validates p >= 2, 1 <= q < p, gcd(p, q) = 1, 0 <= k < p and computes
/// q_star.
LensModel lens_model(int p, int q, int k);

/// The 4-term twisted cellular complex of L(p, q) with fiber R^2: writing
/// R(a) for the rotation by angle a and alpha = 2 pi k / p,
///
///   d1 = R(alpha) - I,
///   d2 = sum_{j=0}^{p-1} R(alpha j),
///   d3 = R(alpha q_star) - I.
///
/// Acyclic exactly when k != 0, with torsion
/// |det d1| |det d3| = 4 sin^2(pi k / p) 4 sin^2(pi k q_star / p).
ChainComplex lens_complex(const LensModel& m);

/// Torsions of L(p, q) over all nontrivial characters k = 1..p-1, sorted
/// ascending. This multiset is a homeomorphism invariant of the space
/// (individual values are not: relabeling the character permutes them).
std::vector<double> lens_torsion_multiset(int p, int q);

/// Equality of sorted copies within tol, entrywise.
bool multisets_match(std::vector<double> a, std::vector<double> b,
                     double tol = 1e-9);

/// Triangulated circle with `segments` >= 3 edges and an SO(2) cocycle
/// whose loop holonomy is rotation by theta (placed on the edge (0, 1)).
std::pair<SimplicialComplex, EdgeCocycle> circle_model(int segments,
                                                       double theta);

/// Laplace spectra on the circle of circumference `length`, coefficients
/// in the flat real 2-plane bundle with holonomy rotation by theta, one
/// spectrum per form degree (both degrees coincide). theta = 0 (mod 2 pi)
/// is the untwisted scalar case, weight 1 with a zero mode per degree;
/// otherwise weight 2 with no kernel.
GradedSpectrum circle_spectrum(double length, double theta);

/// Laplace spectra of the flat torus R^N / (basis Z^N) on q-forms for
/// q = 0..N, N = basis.rows() <= 3: the scalar lattice spectrum with
/// weight binom(N, q) and binom(N, q) zero modes in degree q.
GradedSpectrum torus_spectrum(const Matrix& basis);

}  // namespace torsionlab
