#include "torsionlab/io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace torsionlab {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!known.count(key)) {
      throw ParseError("unknown key \"" + key + "\"", where);
    }
  }
}

Matrix parse_matrix(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError("matrix must be an object", where);
  reject_unknown_keys(j, {"rows", "cols", "entries"}, where);
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries")) {
    throw ParseError("matrix needs rows, cols, entries", where);
  }
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
    throw ParseError("matrix rows/cols must be integers", where);
  }
  long rows = j["rows"].get<long>();
  long cols = j["cols"].get<long>();
  if (rows < 0 || cols < 0) {
    throw ParseError("matrix rows/cols must be nonnegative", where);
  }
  const json& entries = j["entries"];
  if (!entries.is_array() ||
      static_cast<long>(entries.size()) != rows * cols) {
    throw ParseError("matrix entries must hold rows*cols numbers", where);
  }
  Matrix m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long c = 0; c < cols; ++c) {
      const json& cell = entries[static_cast<size_t>(i * cols + c)];
      if (!cell.is_number()) {
        throw ParseError("matrix entry is not a number", where);
      }
      double v = cell.get<double>();
      if (!std::isfinite(v)) {
        throw ParseError("matrix entry is not finite", where);
      }
      m(i, c) = v;
    }
  }
  return m;
}

ordered_json dump_matrix(const Matrix& m) {
  if (!m.allFinite()) {
    throw InputError("write_complex_text: matrix has non-finite entries");
  }
  ordered_json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  ordered_json entries = ordered_json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index c = 0; c < m.cols(); ++c) entries.push_back(m(i, c));
  }
  j["entries"] = std::move(entries);
  return j;
}

SimplicialComplex parse_simplices(const json& j) {
  if (!j.is_array()) {
    throw ParseError("simplices must be an array per dimension", "simplices");
  }
  SimplicialComplex k;
  for (size_t q = 0; q < j.size(); ++q) {
    std::string where = "simplices[" + std::to_string(q) + "]";
    if (!j[q].is_array()) throw ParseError("expected an array", where);
    std::vector<std::vector<int>> level;
    for (const auto& tup : j[q]) {
      if (!tup.is_array()) throw ParseError("simplex must be an array", where);
      std::vector<int> s;
      for (const auto& v : tup) {
        if (!v.is_number_integer()) {
          throw ParseError("vertex ids must be integers", where);
        }
        s.push_back(v.get<int>());
      }
      level.push_back(std::move(s));
    }
    k.simplices.push_back(std::move(level));
  }
  if (!k.simplices.empty()) {
    for (const auto& v : k.simplices[0]) {
      if (v.size() == 1) k.vertices.push_back(v[0]);
    }
  }
  try {
    validate_simplicial(k);
  } catch (const StructuralError& e) {
    throw ParseError(e.what(), "simplices");
  }
  return k;
}

EdgeCocycle parse_cocycle(const json& j) {
  if (!j.is_object()) throw ParseError("cocycle must be an object", "cocycle");
  reject_unknown_keys(j, {"fiber_dim", "edges"}, "cocycle");
  if (!j.contains("fiber_dim") || !j["fiber_dim"].is_number_integer()) {
    throw ParseError("cocycle needs integer fiber_dim", "cocycle");
  }
  EdgeCocycle rho;
  rho.fiber_dim = j["fiber_dim"].get<int>();
  if (rho.fiber_dim < 1) {
    throw ParseError("fiber_dim must be positive", "cocycle");
  }
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) {
      throw ParseError("cocycle edges must be an array", "cocycle");
    }
    for (const auto& entry : j["edges"]) {
      reject_unknown_keys(entry, {"edge", "matrix"}, "cocycle.edges");
      if (!entry.contains("edge") || !entry["edge"].is_array() ||
          entry["edge"].size() != 2 ||
          !entry["edge"][0].is_number_integer() ||
          !entry["edge"][1].is_number_integer()) {
        throw ParseError("each cocycle edge needs an [a, b] pair",
                         "cocycle.edges");
      }
      int a = entry["edge"][0].get<int>();
      int b = entry["edge"][1].get<int>();
      if (a >= b) {
        throw ParseError("cocycle edges must be listed ascending",
                         "cocycle.edges");
      }
      if (!entry.contains("matrix")) {
        throw ParseError("cocycle edge needs a matrix", "cocycle.edges");
      }
      rho.set(a, b, parse_matrix(entry["matrix"], "cocycle.edges"));
    }
  }
  return rho;
}

}  // namespace

ComplexFile parse_complex_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), "json");
  }
  if (!root.is_object()) throw ParseError("document must be an object", "root");
  reject_unknown_keys(
      root, {"label", "dims", "boundaries", "simplices", "cocycle",
             "homology_basis"},
      "root");
  if (!root.contains("dims") || !root.contains("boundaries")) {
    throw ParseError("document needs dims and boundaries", "root");
  }

  ComplexFile out;
  if (root.contains("label")) {
    if (!root["label"].is_string()) {
      throw ParseError("label must be a string", "label");
    }
    out.label = root["label"].get<std::string>();
  }

  if (!root["dims"].is_array() || root["dims"].empty()) {
    throw ParseError("dims must be a nonempty array", "dims");
  }
  std::vector<Index> dims;
  for (const auto& d : root["dims"]) {
    if (!d.is_number_integer() || d.get<long>() < 0) {
      throw ParseError("dims must be nonnegative integers", "dims");
    }
    dims.push_back(d.get<long>());
  }

  if (!root["boundaries"].is_array() ||
      root["boundaries"].size() + 1 != dims.size()) {
    throw ParseError("boundaries must hold one matrix per positive degree",
                     "boundaries");
  }
  std::vector<Matrix> maps;
  for (size_t q = 0; q < root["boundaries"].size(); ++q) {
    maps.push_back(parse_matrix(root["boundaries"][q],
                                "boundaries[" + std::to_string(q) + "]"));
  }
  try {
    out.complex = make_complex(dims, std::move(maps), out.label);
  } catch (const StructuralError& e) {
    throw ParseError(e.what(), "boundaries");
  }

  if (root.contains("simplices")) {
    out.simplices = parse_simplices(root["simplices"]);
    ChainComplex untwisted = boundary_matrices(*out.simplices);
    if (untwisted.dims != out.complex.dims) {
      throw ParseError("dims disagree with the simplex counts", "simplices");
    }
    for (size_t q = 1; q < untwisted.boundaries.size(); ++q) {
      if ((untwisted.boundaries[q] - out.complex.boundaries[q])
              .cwiseAbs()
              .maxCoeff() > 1e-12) {
        throw ParseError("boundaries disagree with the simplicial chain maps",
                         "boundaries[" + std::to_string(q - 1) + "]");
      }
    }
  }

  if (root.contains("cocycle")) {
    if (!out.simplices) {
      throw ParseError("cocycle requires simplices", "cocycle");
    }
    out.cocycle = parse_cocycle(root["cocycle"]);
    try {
      check_cocycle(*out.simplices, *out.cocycle);
    } catch (const Error& e) {
      throw ParseError(e.what(), "cocycle");
    }
  }

  if (root.contains("homology_basis")) {
    const json& hb = root["homology_basis"];
    if (!hb.is_array() || hb.size() != out.complex.dims.size()) {
      throw ParseError("homology_basis must hold one matrix per degree",
                       "homology_basis");
    }
    HomologyBasis h;
    for (size_t q = 0; q < hb.size(); ++q) {
      std::string where = "homology_basis[" + std::to_string(q) + "]";
      Matrix m = parse_matrix(hb[q], where);
      if (m.rows() != out.complex.dims[q]) {
        throw ParseError("row count must equal the degree dimension", where);
      }
      h.basis.push_back(std::move(m));
    }
    out.homology = std::move(h);
  }
  return out;
}

std::string write_complex_text(const ComplexFile& f) {
  ordered_json root;
  if (!f.label.empty()) root["label"] = f.label;
  root["dims"] = f.complex.dims;
  ordered_json boundaries = ordered_json::array();
  for (size_t q = 1; q < f.complex.boundaries.size(); ++q) {
    boundaries.push_back(dump_matrix(f.complex.boundaries[q]));
  }
  root["boundaries"] = std::move(boundaries);

  if (f.simplices) {
    ordered_json levels = ordered_json::array();
    for (const auto& level : f.simplices->simplices) {
      ordered_json tuples = ordered_json::array();
      for (const auto& s : level) tuples.push_back(s);
      levels.push_back(std::move(tuples));
    }
    root["simplices"] = std::move(levels);
  }
  if (f.cocycle) {
    ordered_json c;
    c["fiber_dim"] = f.cocycle->fiber_dim;
    ordered_json edges = ordered_json::array();
    for (const auto& [edge, m] : f.cocycle->edges) {
      ordered_json entry;
      entry["edge"] = {edge.first, edge.second};
      entry["matrix"] = dump_matrix(m);
      edges.push_back(std::move(entry));
    }
    c["edges"] = std::move(edges);
    root["cocycle"] = std::move(c);
  }
  if (f.homology) {
    ordered_json hb = ordered_json::array();
    for (const auto& m : f.homology->basis) hb.push_back(dump_matrix(m));
    root["homology_basis"] = std::move(hb);
  }
  return root.dump(2) + "\n";
}

ComplexFile read_complex_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_complex_text(buf.str());
}

void write_complex_file(const std::string& path, const ComplexFile& f) {
  std::string text = write_complex_text(f);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open file for writing: " + path);
  out << text;
  if (!out) throw InputError("write failed: " + path);
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string line;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    const std::string& cell = cells[i];
    if (cell.find_first_of(",\"\n") != std::string::npos) {
      line += '"';
      for (char ch : cell) {
        if (ch == '"') line += '"';
        line += ch;
      }
      line += '"';
    } else {
      line += cell;
    }
  }
  line += '\n';
  return line;
}

}  // namespace torsionlab
