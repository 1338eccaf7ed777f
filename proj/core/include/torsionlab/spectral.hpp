#pragma once

#include <vector>

#include "torsionlab/spectrum.hpp"

namespace torsionlab {

/// Parameters of the Mellin-split evaluation of spectral zeta functions.
///
/// zeta(s) is computed as (1/Gamma(s)) int_0^inf t^{s-1} (Tr e^{-tD} - h) dt
/// with the integral split at `epsilon`. On [0, epsilon] the trace is
/// replaced by its dual (Poisson-resummed) expansion, whose leading power
/// of t integrates in closed form and whose exponentially small image
/// terms are integrated numerically, keeping `theta_terms` of them. On
/// [epsilon, t_max] the eigenvalue sum itself is integrated numerically.
/// The split point is analytically irrelevant; varying it is a strong
/// self-test of the implementation.
struct MellinSplit {
  double epsilon = 1.0;
  int theta_terms = 40;
  /// Initial node budget per numerical integral; panels are doubled from
  /// there until the result stabilizes.
  int quadrature = 64;
  /// Upper cutoff of the large-t integral; 0 derives it from the spectral
  /// gap so the discarded tail is below working precision.
  double t_max = 0.0;
};

struct ZetaResult {
  double value = 0.0;
  /// Heuristic bound: quadrature stabilization deltas plus truncation-tail
  /// estimates. Not a rigorous interval.
  double error_estimate = 0.0;
  /// Set when s lies within 1e-4 of a pole of the continuation; the value
  /// is still returned (evaluation throws PoleError only within 1e-9).
  bool near_pole = false;
};

/// Eigenvalue-side heat trace sum_j w_j e^{-t lambda_j}, zero modes
/// included; terms are added until they fall below 1e-18 of the running
/// total. Monotone decreasing in t, -> kernel_dim as t -> infinity.
double heat_trace(const Spectrum& s, double t);

/// Dual-side heat trace from the Poisson summation of each family (the
/// leading t^{-p} power plus image corrections; `terms` floors how many
/// are kept). Agrees with heat_trace to near machine precision over the
/// whole t range; vastly better conditioned as t -> 0.
double theta_trace(const Spectrum& s, double t, int terms = 40);

/// Poles of the zeta continuation (family exponents: 1/2 per arithmetic
/// family, N/2 per lattice family), ascending and deduplicated.
std::vector<double> pole_locations(const Spectrum& s);

/// Residue of zeta at s0 from the closed-form coefficient of the leading
/// heat-trace power; 0.0 when s0 is not a pole.
double residue_probe(const Spectrum& s, double s0);

/// Meromorphic continuation of sum_{lambda > 0} w lambda^{-s} at s.
/// Throws PoleError within 1e-9 of a pole.
ZetaResult zeta_eval(const Spectrum& spec, double s,
                     const MellinSplit& split = {},
                     Precision precision = Precision::kDouble);

/// zeta'(0), the quantity behind regularized determinants. The kernel
/// contributes exactly -h (gamma + log epsilon) plus the analytic part at
/// 0, all epsilon dependence cancelling.
ZetaResult zeta_prime_zero(const Spectrum& spec, const MellinSplit& split = {},
                           Precision precision = Precision::kDouble);

/// Zeta-regularized determinant exp(-zeta'(0)) of the nonzero part of the
/// spectrum.
double zeta_det(const Spectrum& spec, const MellinSplit& split = {},
                Precision precision = Precision::kDouble);

}  // namespace torsionlab
