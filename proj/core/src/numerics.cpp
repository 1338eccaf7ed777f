#include "torsionlab/numerics.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>

namespace torsionlab {
namespace numerics {

namespace {

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw InputError(std::string(what) + ": matrix has non-finite entries");
  }
}

using ExtendedReal = boost::multiprecision::cpp_bin_float_50;

template <class Real>
struct ValueDeriv {
  Real value{};
  Real deriv{};
};

// Euler-Maclaurin continuation of zeta(s, a). Every s-dependent factor is
// differentiated in lockstep so the derivative needs no finite differences.
template <class Real>
ValueDeriv<Real> hurwitz_core(Real s, Real a, int shift, int terms) {
  using std::log;
  using std::pow;

  ValueDeriv<Real> out;
  for (int k = 0; k < shift; ++k) {
    Real base = a + k;
    Real p = pow(base, -s);
    Real lg = log(base);
    out.value += p;
    out.deriv -= lg * p;
  }

  Real x = a + shift;
  Real lx = log(x);
  Real xs = pow(x, -s);  // d/ds = -lx * xs

  // Tail integral x^{1-s} / (s - 1).
  Real x1s = x * xs;
  Real sm1 = s - 1;
  out.value += x1s / sm1;
  out.deriv += x1s * (-lx / sm1 - 1 / (sm1 * sm1));

  // Boundary half-term x^{-s} / 2.
  out.value += xs / 2;
  out.deriv -= lx * xs / 2;

  // Correction j carries B_{2j}/(2j)! * (s)_{2j-1} * x^{-s-2j+1}, where
  // (s)_n is the rising factorial tracked with its own derivative.
  Real rise = 1;
  Real rise_d = 0;
  int rise_len = 0;
  Real xpow = xs;  // becomes x^{-s-2j+1}
  for (int j = 1; j <= terms; ++j) {
    while (rise_len < 2 * j - 1) {
      Real f = s + rise_len;
      rise_d = rise_d * f + rise;
      rise = rise * f;
      ++rise_len;
    }
    xpow /= (j == 1) ? x : x * x;
    Real c = boost::math::bernoulli_b2n<Real>(j) /
             boost::math::factorial<Real>(2 * static_cast<unsigned>(j));
    out.value += c * rise * xpow;
    out.deriv += c * (rise_d * xpow - rise * lx * xpow);
  }
  return out;
}

}  // namespace

RankDecomposition svd_rank(const Matrix& m, double rel_tol) {
  if (rel_tol <= 0 || rel_tol >= 1) {
    throw InputError("svd_rank: rel_tol must lie in (0, 1)");
  }
  require_finite(m, "svd_rank");

  RankDecomposition out;
  if (m.rows() == 0 || m.cols() == 0) {
    out.image_basis = Matrix::Zero(m.rows(), 0);
    out.kernel_basis = Matrix::Identity(m.cols(), m.cols());
    out.singular_values = Vector::Zero(0);
    return out;
  }

  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  // The floor at 1 makes a matrix of pure roundoff report rank 0 instead of
  // full rank; complexes here are O(1)-scaled, so this is the right reading
  // of "numerically zero".
  double cutoff = rel_tol * std::max(sv(0), 1.0);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;

  out.rank = rank;
  out.image_basis = svd.matrixU().leftCols(rank);
  out.kernel_basis = svd.matrixV().rightCols(m.cols() - rank);
  out.singular_values = sv;
  return out;
}

double log_abs_det(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw InputError("log_abs_det: matrix must be square");
  }
  require_finite(m, "log_abs_det");
  if (m.rows() == 0) return 0.0;

  Eigen::FullPivLU<Matrix> lu(m);
  Vector diag = lu.matrixLU().diagonal().cwiseAbs();
  double max_pivot = diag.maxCoeff();
  if (max_pivot == 0.0 || diag.minCoeff() <= 1e-14 * max_pivot) {
    Eigen::JacobiSVD<Matrix> svd(m);
    double sv_min = svd.singularValues().tail(1)(0);
    double sv_max = svd.singularValues()(0);
    if (sv_max == 0.0 || sv_min <= 1e-13 * sv_max) {
      throw SingularityError("log_abs_det: matrix singular to working precision",
                             sv_min);
    }
    return svd.singularValues().array().log().sum();
  }
  return diag.array().log().sum();
}

double condition_number(const Matrix& m) {
  require_finite(m, "condition_number");
  if (m.rows() == 0 || m.cols() == 0) return 1.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  double sv_min = svd.singularValues().tail(1)(0);
  double sv_max = svd.singularValues()(0);
  if (sv_min == 0.0) return std::numeric_limits<double>::infinity();
  return sv_max / sv_min;
}

Matrix min_norm_solve(const Matrix& a, const Matrix& rhs, double rel_tol) {
  require_finite(a, "min_norm_solve");
  require_finite(rhs, "min_norm_solve");
  if (a.rows() != rhs.rows()) {
    throw InputError("min_norm_solve: row counts of a and rhs differ");
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(rel_tol);
  return svd.solve(rhs);
}

SymmetricEigen sym_eig(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw InputError("sym_eig: matrix must be square");
  }
  require_finite(m, "sym_eig");
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  double defect = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (defect > 1e-12 * scale) {
    throw InputError("sym_eig: matrix is not symmetric to working precision");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
  if (es.info() != Eigen::Success) {
    throw Error("sym_eig: eigensolver failed to converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

HurwitzZeta hurwitz_zeta(double s, double a, Precision precision, int shift,
                         int terms) {
  if (!(a > 0.0) || a > 1.0) {
    throw InputError("hurwitz_zeta: a must lie in (0, 1]");
  }
  if (!std::isfinite(s)) {
    throw InputError("hurwitz_zeta: s must be finite");
  }
  if (std::abs(s - 1.0) < 1e-9) {
    throw PoleError("hurwitz_zeta: s = 1 is a pole", 1.0, 1.0);
  }
  if (shift < 1 || terms < 1) {
    throw InputError("hurwitz_zeta: shift and terms must be positive");
  }

  if (precision == Precision::kExtended) {
    auto r = hurwitz_core<ExtendedReal>(ExtendedReal(s), ExtendedReal(a),
                                        shift, terms);
    return {static_cast<double>(r.value), static_cast<double>(r.deriv)};
  }
  auto r = hurwitz_core<double>(s, a, shift, terms);
  return {r.value, r.deriv};
}

HurwitzZeta riemann_zeta(double s, Precision precision) {
  return hurwitz_zeta(s, 1.0, precision);
}

}  // namespace numerics
}  // namespace torsionlab
