#pragma once

#include <vector>

#include "torsionlab/numerics.hpp"

namespace torsionlab {

/// Eigenvalue family ((2 pi j + offset) / length)^2, j ranging over all
/// integers, each eigenvalue counted with multiplicity `weight`. offset is
/// reduced mod 2 pi; offset = 0 makes j = 0 a zero mode.
struct ArithmeticFamily {
  double offset = 0.0;
  double length = 1.0;
  double weight = 1.0;
};

/// Eigenvalue family |2 pi B^{-T} m|^2 over integer vectors m, for a full
/// rank lattice with primal basis matrix `basis` (columns generate the
/// lattice). m = 0 is a zero mode. Each eigenvalue carries `weight`.
struct LatticeFamily {
  Matrix basis;
  double weight = 1.0;

  double covolume() const;
  Matrix dual_basis() const;
};

/// The spectrum of one nonnegative self-adjoint operator, presented as a
/// union of closed-form families plus an explicit count of zero modes.
/// kernel_dim includes the zero modes the families produce on their own
/// (offset = 0, m = 0); with_extra_zero_modes appends artificial ones,
/// which must not change any zeta-regularized quantity.
struct Spectrum {
  std::vector<ArithmeticFamily> arithmetic;
  std::vector<LatticeFamily> lattice;
  int kernel_dim = 0;

  Spectrum with_extra_zero_modes(int count) const;
};

/// One spectrum per form degree, index = degree.
using GradedSpectrum = std::vector<Spectrum>;

/// Zero modes implied by the family data alone.
int intrinsic_zero_modes(const Spectrum& s);

/// Checks weights/lengths positive, lattice bases square and invertible,
/// and kernel_dim >= intrinsic_zero_modes.
void validate_spectrum(const Spectrum& s);

/// Smallest positive eigenvalue across all families.
double min_positive_eigenvalue(const Spectrum& s);

/// All (eigenvalue, total weight) pairs with 0 < eigenvalue <= lambda_max,
/// ascending, weights of coinciding eigenvalues merged.
std::vector<std::pair<double, double>> enumerate_eigenvalues(
    const Spectrum& s, double lambda_max);

}  // namespace torsionlab
