#include "torsionlab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace torsionlab {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

Matrix rotation(double angle) {
  Matrix m(2, 2);
  m << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return m;
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

LensModel lens_model(int p, int q, int k) {
  if (p < 2) throw InputError("lens_model: p must be at least 2");
  if (q < 1 || q >= p) throw InputError("lens_model: q must lie in [1, p-1]");
  if (std::gcd(p, q) != 1) throw InputError("lens_model: q must be coprime to p");
  if (k < 0 || k >= p) throw InputError("lens_model: k must lie in [0, p-1]");
  LensModel m{p, q, 0, k};
  for (int c = 1; c < p; ++c) {
    if ((q * c) % p == 1) {
      m.q_star = c;
      break;
    }
  }
  return m;
}

ChainComplex lens_complex(const LensModel& m) {
  if (m.p < 2 || (m.q * m.q_star) % m.p != 1) {
    throw InputError("lens_complex: model not produced by lens_model");
  }
  double alpha = 2.0 * kPi * m.k / m.p;
  Matrix d1 = rotation(alpha) - Matrix::Identity(2, 2);
  Matrix d2 = Matrix::Zero(2, 2);
  for (int j = 0; j < m.p; ++j) d2 += rotation(alpha * j);
  Matrix d3 = rotation(alpha * m.q_star) - Matrix::Identity(2, 2);
  return make_complex({2, 2, 2, 2}, {d1, d2, d3},
                      "lens(" + std::to_string(m.p) + "," +
                          std::to_string(m.q) + ") k=" + std::to_string(m.k));
}

std::vector<double> lens_torsion_multiset(int p, int q) {
  lens_model(p, q, 1);  // argument checks; k = 1 exists for every p >= 2
  std::vector<double> taus;
  taus.reserve(p - 1);
  for (int k = 1; k < p; ++k) {
    taus.push_back(torsion_def(lens_complex(lens_model(p, q, k))).tau);
  }
  std::sort(taus.begin(), taus.end());
  return taus;
}

bool multisets_match(std::vector<double> a, std::vector<double> b, double tol) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

std::pair<SimplicialComplex, EdgeCocycle> circle_model(int segments,
                                                       double theta) {
  if (segments < 3) {
    throw InputError("circle_model: need at least 3 segments");
  }
  std::vector<std::vector<int>> edges;
  for (int i = 0; i + 1 < segments; ++i) edges.push_back({i, i + 1});
  edges.push_back({0, segments - 1});
  SimplicialComplex k = complex_from_simplices(edges);

  EdgeCocycle rho;
  rho.fiber_dim = 2;
  rho.set(0, 1, rotation(theta));
  return {std::move(k), std::move(rho)};
}

GradedSpectrum circle_spectrum(double length, double theta) {
  if (!(length > 0)) throw InputError("circle_spectrum: length must be positive");
  if (!std::isfinite(theta)) throw InputError("circle_spectrum: theta not finite");
  double r = std::fmod(theta, 2.0 * kPi);
  if (r < 0) r += 2.0 * kPi;
  bool trivial = r < 1e-12 || 2.0 * kPi - r < 1e-12;

  Spectrum degree;
  if (trivial) {
    degree.arithmetic.push_back({0.0, length, 1.0});
    degree.kernel_dim = 1;
  } else {
    degree.arithmetic.push_back({r, length, 2.0});
    degree.kernel_dim = 0;
  }
  validate_spectrum(degree);
  // Functions and 1-forms on the circle are isospectral.
  return GradedSpectrum{degree, degree};
}

GradedSpectrum torus_spectrum(const Matrix& basis) {
  int n = static_cast<int>(basis.rows());
  if (basis.cols() != n || n < 1 || n > 3) {
    throw InputError("torus_spectrum: basis must be square of size 1..3");
  }
  if (std::abs(basis.determinant()) < 1e-12) {
    throw SingularityError("torus_spectrum: basis is singular",
                           std::abs(basis.determinant()));
  }
  GradedSpectrum out;
  for (int q = 0; q <= n; ++q) {
    double w = binom(n, q);
    Spectrum s;
    s.lattice.push_back({basis, w});
    s.kernel_dim = static_cast<int>(std::lround(w));
    validate_spectrum(s);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace torsionlab
