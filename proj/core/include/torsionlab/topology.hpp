#pragma once

#include <map>
#include <utility>
#include <vector>

#include "torsionlab/chain.hpp"

namespace torsionlab {

/// A finite abstract simplicial complex on integer vertex ids. simplices[q]
/// lists the q-simplices as strictly ascending vertex tuples, sorted
/// lexicographically; the list is closed under taking faces.
struct SimplicialComplex {
  std::vector<int> vertices;  // ascending
  std::vector<std::vector<std::vector<int>>> simplices;

  int dimension() const { return static_cast<int>(simplices.size()) - 1; }
  Index count(int q) const;
  /// Lex position of an ascending tuple among the q-simplices; throws
  /// InputError if absent.
  Index position(const std::vector<int>& simplex) const;
};

/// Builds a complex from an arbitrary set of simplices (any order, not
/// necessarily closed): faces are filled in, duplicates dropped.
SimplicialComplex complex_from_simplices(
    const std::vector<std::vector<int>>& simplices);

/// Checks ascending tuples, lex order, and face closure.
void validate_simplicial(const SimplicialComplex& k);

bool is_connected(const SimplicialComplex& k);

/// An orthogonal transport matrix per oriented edge. Stored once per
/// unordered edge, keyed (a, b) with a < b, as the transport a -> b;
/// traversing b -> a applies the transpose. Edges without an entry carry
/// the identity, so the default-constructed cocycle is the trivial one.
struct EdgeCocycle {
  int fiber_dim = 1;
  std::map<std::pair<int, int>, Matrix> edges;

  /// Transport along the oriented edge from -> to.
  Matrix transport(int from, int to) const;
  void set(int a, int b, Matrix m);
};

/// Checks every stored matrix is fiber_dim-square and orthogonal to 1e-12,
/// and that transport around each 2-simplex (a,b,c) closes up:
/// M(b,c) M(a,b) = M(a,c) to 1e-10. Throws FlatnessError naming the first
/// bad triangle.
void check_cocycle(const SimplicialComplex& k, const EdgeCocycle& rho);

/// Simplicial chain complex of k with the standard ordered-simplex bases
/// and alternating-sign face maps.
ChainComplex boundary_matrices(const SimplicialComplex& k);

/// Transport of rho along a vertex path (consecutive vertices must span
/// edges of k, or be equal). The loop holonomy is the product, rightmost
/// factor first.
Matrix holonomy(const SimplicialComplex& k, const EdgeCocycle& rho,
                const std::vector<int>& path);

/// Chain complex of k with coefficients twisted by a flat cocycle: each
/// simplex contributes a fiber_dim block, and the face map carries the
/// transport from the face's anchor vertex to the simplex's anchor vertex
/// (anchor = least vertex), conjugated into a common frame at `basepoint`
/// by transport along a breadth-first spanning tree. The basepoint must be
/// a vertex of k; k must be connected.
///
/// Different basepoints change the twisted complex by a based isometry, so
/// everything downstream (homology, torsion) is unchanged.
ChainComplex twist(const SimplicialComplex& k, const EdgeCocycle& rho,
                   int basepoint);

/// Barycentric subdivision, with the cocycle pushed forward: the new
/// vertex for a simplex sits at its barycenter, new edges run from face
/// barycenter to coface barycenter, and each new edge carries the old
/// transport between the two anchor vertices. Loop holonomy is preserved.
std::pair<SimplicialComplex, EdgeCocycle> barycentric_subdivide(
    const SimplicialComplex& k, const EdgeCocycle& rho);

}  // namespace torsionlab
