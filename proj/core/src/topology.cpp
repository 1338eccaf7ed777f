#include "torsionlab/topology.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace torsionlab {

namespace {

std::string tuple_str(const std::vector<int>& t) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ")";
  return os.str();
}

}  // namespace

Index SimplicialComplex::count(int q) const {
  if (q < 0 || q > dimension()) return 0;
  return static_cast<Index>(simplices[q].size());
}

Index SimplicialComplex::position(const std::vector<int>& simplex) const {
  int q = static_cast<int>(simplex.size()) - 1;
  if (q < 0 || q > dimension()) {
    throw InputError("position: no simplex " + tuple_str(simplex));
  }
  const auto& list = simplices[q];
  auto it = std::lower_bound(list.begin(), list.end(), simplex);
  if (it == list.end() || *it != simplex) {
    throw InputError("position: no simplex " + tuple_str(simplex));
  }
  return static_cast<Index>(it - list.begin());
}

SimplicialComplex complex_from_simplices(
    const std::vector<std::vector<int>>& simplices) {
  std::vector<std::set<std::vector<int>>> by_dim;
  for (const auto& raw : simplices) {
    std::vector<int> s = raw;
    std::sort(s.begin(), s.end());
    if (s.empty() || std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw InputError("complex_from_simplices: simplex " + tuple_str(raw) +
                       " has repeated or no vertices");
    }
    // Insert every nonempty subset; subsets of an ascending tuple stay
    // ascending when picked by increasing position.
    int n = static_cast<int>(s.size());
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> face;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) face.push_back(s[i]);
      }
      int q = static_cast<int>(face.size()) - 1;
      if (q >= static_cast<int>(by_dim.size())) by_dim.resize(q + 1);
      by_dim[q].insert(std::move(face));
    }
  }
  SimplicialComplex k;
  for (auto& level : by_dim) {
    k.simplices.emplace_back(level.begin(), level.end());
  }
  if (!k.simplices.empty()) {
    for (const auto& v : k.simplices[0]) k.vertices.push_back(v[0]);
  }
  validate_simplicial(k);
  return k;
}

void validate_simplicial(const SimplicialComplex& k) {
  if (k.simplices.empty() || k.simplices[0].empty()) {
    throw StructuralError("simplicial complex has no vertices", 0);
  }
  std::vector<int> vertex_list;
  for (const auto& v : k.simplices[0]) {
    if (v.size() != 1) {
      throw StructuralError("0-simplex " + tuple_str(v) + " is not a vertex", 0);
    }
    vertex_list.push_back(v[0]);
  }
  if (vertex_list != k.vertices) {
    throw StructuralError("vertex list disagrees with the 0-simplices", 0);
  }

  for (int q = 0; q <= k.dimension(); ++q) {
    const auto& list = k.simplices[q];
    if (q > 0 && list.empty()) {
      throw StructuralError("empty simplex list below the top dimension", q);
    }
    for (size_t i = 0; i < list.size(); ++i) {
      const auto& s = list[i];
      if (static_cast<int>(s.size()) != q + 1) {
        throw StructuralError("simplex " + tuple_str(s) + " has wrong arity", q);
      }
      if (!std::is_sorted(s.begin(), s.end()) ||
          std::adjacent_find(s.begin(), s.end()) != s.end()) {
        throw StructuralError("simplex " + tuple_str(s) + " is not ascending",
                              q);
      }
      if (i > 0 && !(list[i - 1] < s)) {
        throw StructuralError("simplices out of lexicographic order near " +
                                  tuple_str(s),
                              q);
      }
      if (q > 0) {
        for (size_t drop = 0; drop < s.size(); ++drop) {
          std::vector<int> face;
          for (size_t j = 0; j < s.size(); ++j) {
            if (j != drop) face.push_back(s[j]);
          }
          const auto& below = k.simplices[q - 1];
          if (!std::binary_search(below.begin(), below.end(), face)) {
            throw StructuralError("missing face " + tuple_str(face) + " of " +
                                      tuple_str(s),
                                  q);
          }
        }
      }
    }
  }
}

bool is_connected(const SimplicialComplex& k) {
  if (k.vertices.empty()) return true;
  std::map<int, std::vector<int>> adj;
  if (k.dimension() >= 1) {
    for (const auto& e : k.simplices[1]) {
      adj[e[0]].push_back(e[1]);
      adj[e[1]].push_back(e[0]);
    }
  }
  std::set<int> seen{k.vertices[0]};
  std::queue<int> frontier;
  frontier.push(k.vertices[0]);
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int w : adj[v]) {
      if (seen.insert(w).second) frontier.push(w);
    }
  }
  return seen.size() == k.vertices.size();
}

Matrix EdgeCocycle::transport(int from, int to) const {
  if (from == to) return Matrix::Identity(fiber_dim, fiber_dim);
  auto key = std::minmax(from, to);
  auto it = edges.find({key.first, key.second});
  if (it == edges.end()) return Matrix::Identity(fiber_dim, fiber_dim);
  return (from < to) ? it->second : Matrix(it->second.transpose());
}

void EdgeCocycle::set(int a, int b, Matrix m) {
  if (a == b) throw InputError("EdgeCocycle::set: degenerate edge");
  if (a > b) {
    std::swap(a, b);
    m.transposeInPlace();
  }
  edges[{a, b}] = std::move(m);
}

void check_cocycle(const SimplicialComplex& k, const EdgeCocycle& rho) {
  validate_simplicial(k);
  if (rho.fiber_dim < 1) {
    throw InputError("check_cocycle: fiber dimension must be positive");
  }
  Matrix eye = Matrix::Identity(rho.fiber_dim, rho.fiber_dim);
  for (const auto& [edge, m] : rho.edges) {
    if (m.rows() != rho.fiber_dim || m.cols() != rho.fiber_dim) {
      throw InputError("check_cocycle: matrix on edge (" +
                       std::to_string(edge.first) + "," +
                       std::to_string(edge.second) + ") has wrong size");
    }
    if ((m.transpose() * m - eye).cwiseAbs().maxCoeff() > 1e-12) {
      throw InputError("check_cocycle: matrix on edge (" +
                       std::to_string(edge.first) + "," +
                       std::to_string(edge.second) + ") is not orthogonal");
    }
  }
  if (k.dimension() < 2) return;
  for (const auto& t : k.simplices[2]) {
    Matrix ab = rho.transport(t[0], t[1]);
    Matrix bc = rho.transport(t[1], t[2]);
    Matrix ac = rho.transport(t[0], t[2]);
    if ((bc * ab - ac).cwiseAbs().maxCoeff() > 1e-10) {
      throw FlatnessError("cocycle fails to be flat on triangle " +
                              tuple_str(t),
                          t[0], t[1], t[2]);
    }
  }
}

ChainComplex boundary_matrices(const SimplicialComplex& k) {
  validate_simplicial(k);
  int n = k.dimension();
  std::vector<Index> dims(n + 1);
  for (int q = 0; q <= n; ++q) dims[q] = k.count(q);

  std::vector<Matrix> maps;
  for (int q = 1; q <= n; ++q) {
    Matrix d = Matrix::Zero(dims[q - 1], dims[q]);
    for (Index col = 0; col < dims[q]; ++col) {
      const auto& s = k.simplices[q][col];
      double sign = 1.0;
      for (size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<int> face;
        for (size_t j = 0; j < s.size(); ++j) {
          if (j != drop) face.push_back(s[j]);
        }
        d(k.position(face), col) += sign;
        sign = -sign;
      }
    }
    maps.push_back(std::move(d));
  }
  return make_complex(std::move(dims), std::move(maps), "simplicial chains");
}

Matrix holonomy(const SimplicialComplex& k, const EdgeCocycle& rho,
                const std::vector<int>& path) {
  validate_simplicial(k);
  if (path.size() < 2) {
    throw InputError("holonomy: path needs at least two vertices");
  }
  Matrix result = Matrix::Identity(rho.fiber_dim, rho.fiber_dim);
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    int u = path[i], v = path[i + 1];
    if (u != v) {
      std::vector<int> edge{std::min(u, v), std::max(u, v)};
      if (k.dimension() < 1 ||
          !std::binary_search(k.simplices[1].begin(), k.simplices[1].end(),
                              edge)) {
        throw InputError("holonomy: path step " + tuple_str(edge) +
                         " is not an edge");
      }
    }
    result = rho.transport(u, v) * result;
  }
  return result;
}

ChainComplex twist(const SimplicialComplex& k, const EdgeCocycle& rho,
                   int basepoint) {
  check_cocycle(k, rho);
  if (!is_connected(k)) {
    throw PreconditionError("twist: complex must be connected");
  }
  if (!std::binary_search(k.vertices.begin(), k.vertices.end(), basepoint)) {
    throw InputError("twist: basepoint is not a vertex");
  }

  // Gauge frame per vertex: transport from the basepoint along a
  // breadth-first spanning tree (neighbors visited in ascending order).
  std::map<int, std::vector<int>> adj;
  if (k.dimension() >= 1) {
    for (const auto& e : k.simplices[1]) {
      adj[e[0]].push_back(e[1]);
      adj[e[1]].push_back(e[0]);
    }
    for (auto& [v, nbrs] : adj) std::sort(nbrs.begin(), nbrs.end());
  }
  std::map<int, Matrix> frame;
  frame[basepoint] = Matrix::Identity(rho.fiber_dim, rho.fiber_dim);
  std::queue<int> frontier;
  frontier.push(basepoint);
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int w : adj[v]) {
      if (!frame.count(w)) {
        frame[w] = rho.transport(v, w) * frame[v];
        frontier.push(w);
      }
    }
  }

  int n = k.dimension();
  int f = rho.fiber_dim;
  std::vector<Index> dims(n + 1);
  for (int q = 0; q <= n; ++q) dims[q] = k.count(q) * f;

  std::vector<Matrix> maps;
  for (int q = 1; q <= n; ++q) {
    Matrix d = Matrix::Zero(dims[q - 1], dims[q]);
    for (Index col = 0; col < k.count(q); ++col) {
      const auto& s = k.simplices[q][col];
      int anchor = s[0];
      double sign = 1.0;
      for (size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<int> face;
        for (size_t j = 0; j < s.size(); ++j) {
          if (j != drop) face.push_back(s[j]);
        }
        int face_anchor = face[0];
        Index row = k.position(face);
        Matrix block = frame.at(face_anchor).transpose() *
                       rho.transport(anchor, face_anchor) * frame.at(anchor);
        d.block(row * f, col * f, f, f) += sign * block;
        sign = -sign;
      }
    }
    maps.push_back(std::move(d));
  }
  return make_complex(std::move(dims), std::move(maps),
                      "twisted chains (fiber " + std::to_string(f) + ")");
}

std::pair<SimplicialComplex, EdgeCocycle> barycentric_subdivide(
    const SimplicialComplex& k, const EdgeCocycle& rho) {
  validate_simplicial(k);

  // One new vertex per old simplex, numbered in (dimension, lex) order, so
  // ids strictly increase along any chain of proper inclusions.
  std::map<std::vector<int>, int> id_of;
  std::vector<int> anchor_of;  // least original vertex of each old simplex
  int next_id = 0;
  for (int q = 0; q <= k.dimension(); ++q) {
    for (const auto& s : k.simplices[q]) {
      id_of[s] = next_id++;
      anchor_of.push_back(s[0]);
    }
  }

  // New q-simplices are chains s_0 < s_1 < ... < s_q of proper inclusions;
  // faces of a chain are its subchains, so the set is face-closed.
  std::vector<std::vector<std::vector<int>>> chains_ending(next_id);
  std::vector<std::vector<std::vector<int>>> new_simplices;
  for (int q = 0; q <= k.dimension(); ++q) {
    for (const auto& s : k.simplices[q]) {
      int id = id_of[s];
      auto& mine = chains_ending[id];
      mine.push_back({id});
      int arity = static_cast<int>(s.size());
      for (unsigned mask = 1; mask + 1 < (1u << arity); ++mask) {
        std::vector<int> face;
        for (int i = 0; i < arity; ++i) {
          if (mask & (1u << i)) face.push_back(s[i]);
        }
        for (const auto& c : chains_ending[id_of[face]]) {
          std::vector<int> extended = c;
          extended.push_back(id);
          mine.push_back(std::move(extended));
        }
      }
      for (const auto& c : mine) {
        int dim = static_cast<int>(c.size()) - 1;
        if (dim >= static_cast<int>(new_simplices.size())) {
          new_simplices.resize(dim + 1);
        }
        new_simplices[dim].push_back(c);
      }
    }
  }
  for (auto& level : new_simplices) std::sort(level.begin(), level.end());

  SimplicialComplex out;
  out.simplices = std::move(new_simplices);
  for (const auto& v : out.simplices[0]) out.vertices.push_back(v[0]);
  validate_simplicial(out);

  EdgeCocycle pushed;
  pushed.fiber_dim = rho.fiber_dim;
  if (out.dimension() >= 1) {
    for (const auto& e : out.simplices[1]) {
      int a = anchor_of[e[0]];
      int b = anchor_of[e[1]];
      if (a == b) continue;
      Matrix t = rho.transport(a, b);
      if ((t - Matrix::Identity(rho.fiber_dim, rho.fiber_dim))
              .cwiseAbs()
              .maxCoeff() > 0) {
        pushed.set(e[0], e[1], std::move(t));
      }
    }
  }
  return {std::move(out), std::move(pushed)};
}

}  // namespace torsionlab
