#include "torsionlab/rs_torsion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "torsionlab/spaces.hpp"

namespace torsionlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

double log_analytic_torsion(const GradedSpectrum& spectra,
                            const MellinSplit& split, Precision precision) {
  if (spectra.empty()) {
    throw InputError("log_analytic_torsion: empty graded spectrum");
  }
  double total = 0.0;
  for (size_t q = 1; q < spectra.size(); ++q) {
    double sign = (q % 2 == 0) ? 1.0 : -1.0;
    double zp = zeta_prime_zero(spectra[q], split, precision).value;
    total += 0.5 * sign * static_cast<double>(q) * zp;
  }
  return total;
}

double analytic_torsion(const GradedSpectrum& spectra, const MellinSplit& split,
                        Precision precision) {
  return std::exp(log_analytic_torsion(spectra, split, precision));
}

double metric_independence_scan(double theta,
                                const std::vector<double>& lengths,
                                const MellinSplit& split, Precision precision) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r < 1e-12 || kTwoPi - r < 1e-12) {
    throw PreconditionError(
        "metric_independence_scan: theta must not be a multiple of 2 pi (the "
        "untwisted circle has homology and its torsion depends on the length)");
  }
  if (lengths.size() < 2) {
    throw InputError("metric_independence_scan: need at least two lengths");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double length : lengths) {
    if (!(length > 0)) {
      throw InputError("metric_independence_scan: lengths must be positive");
    }
    double lt =
        log_analytic_torsion(circle_spectrum(length, theta), split, precision);
    lo = std::min(lo, lt);
    hi = std::max(hi, lt);
  }
  return hi - lo;
}

TorsionComparison cheeger_muller_check(int p, int k, int subdivision_level,
                                       const MellinSplit& split,
                                       Precision precision) {
  if (p < 2) throw InputError("cheeger_muller_check: p must be at least 2");
  if (subdivision_level < 0) {
    throw InputError("cheeger_muller_check: negative subdivision level");
  }
  if (k % p == 0) {
    throw PreconditionError(
        "cheeger_muller_check: k must be nonzero mod p, else the twisted "
        "complex has homology");
  }

  TorsionComparison out;
  out.p = p;
  out.k = k;
  out.subdivision_level = subdivision_level;
  out.theta = kTwoPi * k / p;

  auto [complex, cocycle] = circle_model(3, out.theta);
  for (int level = 0; level < subdivision_level; ++level) {
    std::tie(complex, cocycle) = barycentric_subdivide(complex, cocycle);
  }
  ChainComplex twisted = twist(complex, cocycle, complex.vertices[0]);
  out.log_combinatorial = torsion_def(twisted).log_tau;

  out.log_analytic = log_analytic_torsion(circle_spectrum(1.0, out.theta),
                                          split, precision);
  out.gap = std::abs(out.log_analytic - out.log_combinatorial);
  return out;
}

}  // namespace torsionlab
