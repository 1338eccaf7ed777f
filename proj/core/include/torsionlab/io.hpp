#pragma once

#include <optional>
#include <string>

#include "torsionlab/chain.hpp"
#include "torsionlab/topology.hpp"

namespace torsionlab {

/// On-disk description of a chain complex, optionally with the simplicial
/// complex / cocycle / homology basis it came from. When `simplices` is
/// present, `complex` always holds the untwisted simplicial chain complex;
/// a cocycle is carried alongside and applied by consumers.
struct ComplexFile {
  std::string label;
  ChainComplex complex;
  std::optional<SimplicialComplex> simplices;
  std::optional<EdgeCocycle> cocycle;
  std::optional<HomologyBasis> homology;
};

/// Parses the JSON document format:
///
///   {
///     "label": "...",                               // optional
///     "dims": [n0, ..., nN],
///     "boundaries": [M1, ..., MN],                  // d_q as {rows, cols, entries}
///     "simplices": [[[v...]...]...],                // optional, per dimension
///     "cocycle": {"fiber_dim": f, "edges": [...]},  // optional, needs simplices
///     "homology_basis": [M0, ..., MN]               // optional
///   }
///
/// Matrices are {"rows": r, "cols": c, "entries": [row-major]}. Unknown
/// keys anywhere are rejected (ParseError naming the key), as are shape
/// mismatches between the parts.
ComplexFile parse_complex_text(const std::string& text);

/// Serializes in canonical form: fixed key order, two-space indentation,
/// trailing newline, shortest round-trip number rendering. Parsing the
/// output and re-serializing reproduces it byte for byte.
std::string write_complex_text(const ComplexFile& f);

ComplexFile read_complex_file(const std::string& path);
void write_complex_file(const std::string& path, const ComplexFile& f);

/// One CSV line from preformatted cells: values joined by commas, fields
/// quoted only when they contain a comma, quote, or newline.
std::string csv_row(const std::vector<std::string>& cells);

}  // namespace torsionlab
