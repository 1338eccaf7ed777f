#pragma once

#include <vector>

#include "torsionlab/chain.hpp"
#include "torsionlab/spectral.hpp"

namespace torsionlab {

/// Analytic torsion of a graded spectrum:
///
///   log T = 1/2 sum_q (-1)^q q zeta_q'(0).
///
/// For the twisted circle this equals the combinatorial torsion of any
/// triangulation; in even dimensions the binomial weights cancel degree by
/// degree and log T = 0.
double log_analytic_torsion(const GradedSpectrum& spectra,
                            const MellinSplit& split = {},
                            Precision precision = Precision::kDouble);

/// exp(log_analytic_torsion).
double analytic_torsion(const GradedSpectrum& spectra,
                        const MellinSplit& split = {},
                        Precision precision = Precision::kDouble);

/// Spread (max minus min) of log T over circle spectra of the given
/// circumferences at fixed holonomy angle theta. theta must not be a
/// multiple of 2 pi: the acyclic case is exactly the one where log T is a
/// topological invariant and the spread should vanish.
double metric_independence_scan(double theta,
                                const std::vector<double>& lengths,
                                const MellinSplit& split = {},
                                Precision precision = Precision::kDouble);

struct TorsionComparison {
  int p = 0;
  int k = 0;
  int subdivision_level = 0;
  double theta = 0.0;
  double log_analytic = 0.0;
  double log_combinatorial = 0.0;
  double gap = 0.0;  // |log_analytic - log_combinatorial|
};

/// The two torsions of the circle with holonomy rotation by 2 pi k / p:
/// analytic from the unit-circumference spectrum, combinatorial from a
/// triangulated circle subdivided `subdivision_level` times and twisted by
/// the matching cocycle. k must not vanish mod p.
TorsionComparison cheeger_muller_check(int p, int k, int subdivision_level,
                                       const MellinSplit& split = {},
                                       Precision precision = Precision::kDouble);

}  // namespace torsionlab
