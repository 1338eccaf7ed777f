#pragma once

#include <string>
#include <vector>

#include "torsionlab/numerics.hpp"

namespace torsionlab {

/// A finite based chain complex of real vector spaces
///
///   0 -> C_N -> ... -> C_1 -> C_0 -> 0,
///
/// each C_q carrying its preferred (standard) basis. boundaries[q] is the
/// matrix of d_q : C_q -> C_{q-1} in those bases; boundaries[0] is the
/// empty map out of C_0 and is stored as a 0 x dims[0] matrix so that
/// degrees and indices line up.
struct ChainComplex {
  std::vector<Index> dims;
  std::vector<Matrix> boundaries;
  std::string label;

  int top_degree() const { return static_cast<int>(dims.size()) - 1; }

  /// d_q : C_q -> C_{q-1} for q in [0, N].
  const Matrix& outgoing(int q) const { return boundaries.at(q); }

  /// d_{q+1} : C_{q+1} -> C_q, or a dims[q] x 0 matrix when q = N.
  Matrix incoming(int q) const;
};

/// Builds a complex from dims and the maps d_1, ..., d_N (d_0 is implied).
/// Shapes are checked; d o d = 0 is not (use validate_complex).
ChainComplex make_complex(std::vector<Index> dims, std::vector<Matrix> maps,
                          std::string label = "");

struct ValidationReport {
  bool ok = true;
  /// defect[q] = ||d_q d_{q+1}||_F for q in [1, N-1]; empty when N < 2.
  std::vector<double> defects;
  int first_bad_degree = -1;
};

/// Checks d_q d_{q+1} = 0 within 1e-10 * max(1, ||d_q|| ||d_{q+1}||).
ValidationReport validate_complex(const ChainComplex& c);

/// validate_complex, throwing StructuralError on the first failure.
void require_valid(const ChainComplex& c);

/// Betti numbers b_q = dim ker d_q - rank d_{q+1}, via svd_rank.
std::vector<Index> homology_dims(const ChainComplex& c, double tol = 1e-9);

int euler_characteristic(const ChainComplex& c);

/// d_q^T d_q + d_{q+1} d_{q+1}^T acting on C_q; positive semidefinite,
/// with kernel the harmonic representatives of H_q.
Matrix combinatorial_laplacian(const ChainComplex& c, int q);

/// Preferred cycle representatives of homology: basis[q] has dim H_q
/// columns, each a cycle in C_q whose classes form a basis of H_q.
struct HomologyBasis {
  std::vector<Matrix> basis;
};

/// Orthonormal basis of ker(Laplacian) in each degree.
HomologyBasis harmonic_basis(const ChainComplex& c, double tol = 1e-9);

enum class TorsionMethod { kDefinition, kLaplacian };

struct TorsionValue {
  double log_tau = 0.0;
  double tau = 1.0;
  TorsionMethod method = TorsionMethod::kDefinition;
  /// Worst condition number among the matrices whose determinants (or log
  /// determinants) entered the answer. A large value flags an assembled
  /// basis that barely spans and deserves suspicion, not an exception.
  double condition_report = 1.0;
};

struct TorsionOptions {
  double rank_tol = 1e-9;
  /// Optional orthogonal rotation applied to the image basis b_q chosen in
  /// degree q (rotations[q] must be square of size rank d_{q+1}). The
  /// torsion is invariant under these; the hook exists so tests can verify
  /// that directly rather than trusting the claim.
  std::vector<Matrix> image_rotations;
};

/// Torsion from its definition: in each degree assemble the square matrix
///
///   A_q = [ b_q | h_q | lift of b_{q-1} ]
///
/// whose columns are an orthonormal basis b_q of im d_{q+1}, the given
/// homology representatives projected onto ker d_q, and a minimum-norm
/// d_q-preimage of the basis chosen for im d_q one degree down. Then
///
///   log tau = sum_q (-1)^q log |det A_q|.
///
/// h must supply exactly dim H_q independent cycle columns per degree
/// (checked); pass {} for an acyclic complex.
TorsionValue torsion_def(const ChainComplex& c, const HomologyBasis& h,
                         const TorsionOptions& options = {});

/// torsion_def with the harmonic homology basis filled in automatically.
TorsionValue torsion_def(const ChainComplex& c);

/// Torsion of an acyclic complex from its combinatorial Laplacians:
///
///   log tau = 1/2 sum_q (-1)^{q+1} q log det L_q.
///
/// Agrees with torsion_def in exact arithmetic when the complex is acyclic
/// and the reference bases are orthonormal; throws PreconditionError if any
/// homology survives.
TorsionValue torsion_laplacian(const ChainComplex& c);

/// Tensor product complex E_n = sum_{p+q=n} C_p (x) D_q with the usual
/// signed Leibniz boundary. Basis order within degree n: blocks by
/// ascending p, row-major within each block.
ChainComplex tensor_product(const ChainComplex& c, const ChainComplex& d);

}  // namespace torsionlab
