#pragma once

#include <Eigen/Dense>

#include "torsionlab/errors.hpp"

namespace torsionlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Working precision for the analytic evaluators. kDouble runs everything
/// in hardware doubles; kExtended switches the zeta / Hurwitz kernels to a
/// 50-digit software float and rounds the final results back to double.
enum class Precision { kDouble, kExtended };

namespace numerics {

/// Rank-revealing SVD of a real matrix.
///
/// rank counts singular values above rel_tol * max(sigma_max, 1); the floor
/// keeps matrices of pure roundoff at rank 0 (inputs here are O(1)-scaled).
/// image_basis has orthonormal columns spanning the column space,
/// kernel_basis orthonormal columns spanning the null space.
/// singular_values is nonincreasing.
struct RankDecomposition {
  Index rank = 0;
  Matrix image_basis;
  Matrix kernel_basis;
  Vector singular_values;
};

RankDecomposition svd_rank(const Matrix& m, double rel_tol = 1e-9);

/// log |det m| via a full-pivot LU factorization. Throws SingularityError
/// if m is singular to working precision; the error carries the smallest
/// singular value. For a 0 x 0 matrix the determinant is 1 and the result 0.
double log_abs_det(const Matrix& m);

/// sigma_max / sigma_min. Infinity for a rank-deficient matrix.
double condition_number(const Matrix& m);

/// Minimum-norm solution X of a X = rhs using the pseudo-inverse.
/// Components of rhs outside the column space of a are dropped, so the
/// caller is responsible for checking solvability when it matters.
Matrix min_norm_solve(const Matrix& a, const Matrix& rhs,
                      double rel_tol = 1e-9);

struct SymmetricEigen {
  Vector values;   // ascending
  Matrix vectors;  // orthonormal columns, same order
};

/// Eigendecomposition of a symmetric matrix. The input must be symmetric
/// up to 1e-12 (relative to its largest entry); it is symmetrized before
/// factoring so the returned data is exactly that of (m + m^T)/2.
SymmetricEigen sym_eig(const Matrix& m);

struct HurwitzZeta {
  double value;
  double derivative;  // d/ds at the requested s
};

/// Hurwitz zeta(s, a) = sum_{k>=0} (a+k)^{-s} continued via Euler-Maclaurin:
/// the first `shift` terms are summed directly and the tail is expanded
/// about a + shift with `terms` Bernoulli corrections. The s-derivative is
/// carried through every term analytically, which keeps it accurate at
/// s = 0 where finite differences of the continuation degrade.
///
/// Valid for a in (0, 1] and |s| <= 4 away from the pole at s = 1
/// (absolute accuracy ~1e-12 on that range with the defaults).
HurwitzZeta hurwitz_zeta(double s, double a,
                         Precision precision = Precision::kDouble,
                         int shift = 20, int terms = 14);

/// Riemann zeta(s) = hurwitz_zeta(s, 1).
HurwitzZeta riemann_zeta(double s, Precision precision = Precision::kDouble);

}  // namespace numerics
}  // namespace torsionlab
