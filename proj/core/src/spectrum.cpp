#include "torsionlab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace torsionlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double reduced_offset(const ArithmeticFamily& f) {
  double r = std::fmod(f.offset, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

}  // namespace

double LatticeFamily::covolume() const { return std::abs(basis.determinant()); }

Matrix LatticeFamily::dual_basis() const {
  return basis.inverse().transpose();
}

Spectrum Spectrum::with_extra_zero_modes(int count) const {
  if (count < 0) throw InputError("with_extra_zero_modes: negative count");
  Spectrum out = *this;
  out.kernel_dim += count;
  return out;
}

int intrinsic_zero_modes(const Spectrum& s) {
  double total = 0.0;
  for (const auto& f : s.arithmetic) {
    double r = reduced_offset(f);
    if (r < 1e-12 || kTwoPi - r < 1e-12) total += f.weight;
  }
  for (const auto& f : s.lattice) total += f.weight;
  return static_cast<int>(std::lround(total));
}

void validate_spectrum(const Spectrum& s) {
  for (const auto& f : s.arithmetic) {
    if (!(f.weight > 0) || !(f.length > 0) || !std::isfinite(f.offset)) {
      throw InputError("spectrum: arithmetic family needs positive weight and "
                       "length and finite offset");
    }
  }
  for (const auto& f : s.lattice) {
    if (f.basis.rows() != f.basis.cols() || f.basis.rows() < 1 ||
        f.basis.rows() > 3) {
      throw InputError("spectrum: lattice basis must be square of size 1..3");
    }
    if (!(f.weight > 0)) {
      throw InputError("spectrum: lattice family needs positive weight");
    }
    if (std::abs(f.basis.determinant()) < 1e-12) {
      throw SingularityError("spectrum: lattice basis is singular",
                             std::abs(f.basis.determinant()));
    }
  }
  if (s.kernel_dim < intrinsic_zero_modes(s)) {
    throw InputError("spectrum: kernel_dim below the zero modes the families "
                     "already produce");
  }
}

double min_positive_eigenvalue(const Spectrum& s) {
  validate_spectrum(s);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : s.arithmetic) {
    double r = reduced_offset(f);
    for (double phase : {r, kTwoPi - r}) {
      if (phase > 1e-12) {
        best = std::min(best, (phase / f.length) * (phase / f.length));
      }
    }
    best = std::min(best, (kTwoPi / f.length) * (kTwoPi / f.length));
  }
  for (const auto& f : s.lattice) {
    Matrix dual = f.dual_basis();
    int n = static_cast<int>(dual.rows());
    // Shortest dual vector among small integer combinations; range 2 is
    // enough for the mildly skewed bases validate_spectrum admits.
    int r = 2;
    Eigen::VectorXd m(n);
    std::vector<int> idx(n, -r);
    while (true) {
      for (int i = 0; i < n; ++i) m(i) = idx[i];
      if (m.cwiseAbs().maxCoeff() > 0) {
        double lambda = (kTwoPi * (dual * m)).squaredNorm();
        best = std::min(best, lambda);
      }
      int i = 0;
      while (i < n && ++idx[i] > r) idx[i++] = -r;
      if (i == n) break;
    }
  }
  if (!std::isfinite(best)) {
    throw InputError("min_positive_eigenvalue: spectrum has no families");
  }
  return best;
}

std::vector<std::pair<double, double>> enumerate_eigenvalues(
    const Spectrum& s, double lambda_max) {
  validate_spectrum(s);
  if (!(lambda_max > 0)) {
    throw InputError("enumerate_eigenvalues: lambda_max must be positive");
  }
  std::map<double, double> acc;
  for (const auto& f : s.arithmetic) {
    double bound = std::sqrt(lambda_max) * f.length / kTwoPi + 2;
    long jmax = static_cast<long>(bound) + 1;
    for (long j = -jmax; j <= jmax; ++j) {
      double nu = (kTwoPi * j + reduced_offset(f)) / f.length;
      double lambda = nu * nu;
      if (lambda > 1e-12 && lambda <= lambda_max) acc[lambda] += f.weight;
    }
  }
  for (const auto& f : s.lattice) {
    Matrix dual = f.dual_basis();
    int n = static_cast<int>(dual.rows());
    // |2 pi dual m| >= 2 pi sigma_min(dual) |m|, so |m| is bounded.
    Eigen::JacobiSVD<Matrix> svd(dual);
    double sigma_min = svd.singularValues().tail(1)(0);
    int r = static_cast<int>(std::sqrt(lambda_max) / (kTwoPi * sigma_min)) + 2;
    Eigen::VectorXd m(n);
    std::vector<int> idx(n, -r);
    while (true) {
      for (int i = 0; i < n; ++i) m(i) = idx[i];
      if (m.cwiseAbs().maxCoeff() > 0) {
        double lambda = (kTwoPi * (dual * m)).squaredNorm();
        if (lambda <= lambda_max) acc[lambda] += f.weight;
      }
      int i = 0;
      while (i < n && ++idx[i] > r) idx[i++] = -r;
      if (i == n) break;
    }
  }
  // Merge eigenvalues separated by less than a relative 1e-9.
  std::vector<std::pair<double, double>> out;
  for (const auto& [lambda, w] : acc) {
    if (!out.empty() &&
        lambda - out.back().first <= 1e-9 * std::max(1.0, lambda)) {
      out.back().second += w;
    } else {
      out.emplace_back(lambda, w);
    }
  }
  return out;
}

}  // namespace torsionlab
