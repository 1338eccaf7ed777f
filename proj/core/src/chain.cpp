#include "torsionlab/chain.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <utility>

namespace torsionlab {

namespace {

using numerics::RankDecomposition;

std::string degree_str(int q) { return "degree " + std::to_string(q); }

void check_shapes(const ChainComplex& c) {
  if (c.dims.empty()) {
    throw StructuralError("chain complex must have at least degree 0");
  }
  if (c.boundaries.size() != c.dims.size()) {
    throw StructuralError("boundary count does not match degree count");
  }
  for (int q = 0; q <= c.top_degree(); ++q) {
    if (c.dims[q] < 0) {
      throw StructuralError("negative dimension at " + degree_str(q), q);
    }
    Index want_rows = (q == 0) ? 0 : c.dims[q - 1];
    if (c.boundaries[q].rows() != want_rows ||
        c.boundaries[q].cols() != c.dims[q]) {
      throw StructuralError("boundary shape mismatch at " + degree_str(q), q);
    }
    if (!c.boundaries[q].allFinite()) {
      throw StructuralError("non-finite boundary entries at " + degree_str(q),
                            q);
    }
  }
}

}  // namespace

Matrix ChainComplex::incoming(int q) const {
  if (q < 0 || q > top_degree()) {
    throw InputError("incoming: degree out of range");
  }
  if (q == top_degree()) return Matrix::Zero(dims[q], 0);
  return boundaries[q + 1];
}

ChainComplex make_complex(std::vector<Index> dims, std::vector<Matrix> maps,
                          std::string label) {
  ChainComplex c;
  c.dims = std::move(dims);
  c.label = std::move(label);
  if (c.dims.empty()) {
    throw StructuralError("chain complex must have at least degree 0");
  }
  if (maps.size() + 1 != c.dims.size()) {
    throw StructuralError("expected one boundary map per positive degree");
  }
  c.boundaries.reserve(c.dims.size());
  c.boundaries.push_back(Matrix::Zero(0, c.dims[0]));
  for (auto& m : maps) c.boundaries.push_back(std::move(m));
  check_shapes(c);
  return c;
}

ValidationReport validate_complex(const ChainComplex& c) {
  check_shapes(c);
  ValidationReport report;
  for (int q = 1; q < c.top_degree(); ++q) {
    const Matrix& a = c.boundaries[q];
    const Matrix& b = c.boundaries[q + 1];
    double defect = (a * b).norm();
    report.defects.push_back(defect);
    double tol = 1e-10 * std::max(1.0, a.norm() * b.norm());
    if (defect > tol && report.ok) {
      report.ok = false;
      report.first_bad_degree = q;
    }
  }
  return report;
}

void require_valid(const ChainComplex& c) {
  ValidationReport report = validate_complex(c);
  if (!report.ok) {
    throw StructuralError(
        "boundary composition is nonzero at " +
            degree_str(report.first_bad_degree) +
            " (defect " + std::to_string(report.defects[report.first_bad_degree - 1]) + ")",
        report.first_bad_degree);
  }
}

std::vector<Index> homology_dims(const ChainComplex& c, double tol) {
  require_valid(c);
  int n = c.top_degree();
  std::vector<Index> ranks(n + 2, 0);  // ranks[q] = rank d_q, d_{N+1} = 0
  for (int q = 1; q <= n; ++q) {
    ranks[q] = numerics::svd_rank(c.boundaries[q], tol).rank;
  }
  std::vector<Index> betti(n + 1);
  for (int q = 0; q <= n; ++q) {
    betti[q] = c.dims[q] - ranks[q] - ranks[q + 1];
  }
  return betti;
}

int euler_characteristic(const ChainComplex& c) {
  int chi = 0;
  for (int q = 0; q <= c.top_degree(); ++q) {
    chi += (q % 2 == 0 ? 1 : -1) * static_cast<int>(c.dims[q]);
  }
  return chi;
}

Matrix combinatorial_laplacian(const ChainComplex& c, int q) {
  if (q < 0 || q > c.top_degree()) {
    throw InputError("combinatorial_laplacian: degree out of range");
  }
  const Matrix& out = c.outgoing(q);
  Matrix in = c.incoming(q);
  return out.transpose() * out + in * in.transpose();
}

HomologyBasis harmonic_basis(const ChainComplex& c, double tol) {
  require_valid(c);
  HomologyBasis h;
  h.basis.reserve(c.dims.size());
  for (int q = 0; q <= c.top_degree(); ++q) {
    if (c.dims[q] == 0) {
      h.basis.push_back(Matrix::Zero(0, 0));
      continue;
    }
    Matrix lap = combinatorial_laplacian(c, q);
    h.basis.push_back(numerics::svd_rank(lap, tol).kernel_basis);
  }
  return h;
}

TorsionValue torsion_def(const ChainComplex& c, const HomologyBasis& h,
                         const TorsionOptions& options) {
  require_valid(c);
  int n = c.top_degree();
  double tol = options.rank_tol;

  // One SVD per boundary map serves two degrees: svds[q] gives the image
  // basis of d_q (living in C_{q-1}) and the kernel basis in C_q.
  std::vector<RankDecomposition> svds(n + 1);
  for (int q = 1; q <= n; ++q) {
    svds[q] = numerics::svd_rank(c.boundaries[q], tol);
  }

  TorsionValue result;
  result.method = TorsionMethod::kDefinition;

  Matrix prev_image;  // basis used for im d_q in degree q-1, post-rotation
  for (int q = 0; q <= n; ++q) {
    Index dim = c.dims[q];
    Index rank_out = (q == 0) ? 0 : svds[q].rank;
    Index rank_in = (q == n) ? 0 : svds[q + 1].rank;
    Index h_dim = dim - rank_out - rank_in;

    Matrix cycles = (q == 0) ? Matrix(Matrix::Identity(dim, dim))
                             : svds[q].kernel_basis;

    Matrix given = (q < static_cast<int>(h.basis.size()))
                       ? h.basis[q]
                       : Matrix::Zero(dim, 0);
    if (given.cols() != h_dim || given.rows() != dim) {
      throw InputError("torsion_def: homology basis at " + degree_str(q) +
                       " must have " + std::to_string(h_dim) + " columns");
    }

    Matrix image = (q == n) ? Matrix::Zero(dim, 0) : svds[q + 1].image_basis;
    if (q < static_cast<int>(options.image_rotations.size()) &&
        options.image_rotations[q].size() > 0) {
      const Matrix& r = options.image_rotations[q];
      if (r.rows() != rank_in || r.cols() != rank_in) {
        throw InputError("torsion_def: image rotation at " + degree_str(q) +
                         " has wrong size");
      }
      image = image * r;
    }

    Matrix projected(dim, h_dim);
    if (h_dim > 0) {
      if (q > 0) {
        double cycle_defect = (c.boundaries[q] * given).cwiseAbs().maxCoeff();
        double scale = std::max(1.0, given.cwiseAbs().maxCoeff() *
                                         c.boundaries[q].cwiseAbs().maxCoeff());
        if (cycle_defect > 1e-10 * scale) {
          throw InputError("torsion_def: homology columns at " + degree_str(q) +
                           " are not cycles");
        }
      }
      projected = cycles * (cycles.transpose() * given);
      // The classes must stay independent after killing the boundary part.
      Matrix residual = projected - image * (image.transpose() * projected);
      if (numerics::svd_rank(residual, tol).rank != h_dim) {
        throw InputError("torsion_def: homology columns at " + degree_str(q) +
                         " do not span the quotient");
      }
    }

    Matrix lift(dim, rank_out);
    if (rank_out > 0) {
      lift = numerics::min_norm_solve(c.boundaries[q], prev_image, tol);
    }

    if (dim > 0) {
      Matrix a(dim, rank_in + h_dim + rank_out);
      a << image, projected, lift;
      result.log_tau += (q % 2 == 0 ? 1.0 : -1.0) * numerics::log_abs_det(a);
      result.condition_report =
          std::max(result.condition_report, numerics::condition_number(a));
    }
    prev_image = image;
  }

  result.tau = std::exp(result.log_tau);
  return result;
}

TorsionValue torsion_def(const ChainComplex& c) {
  return torsion_def(c, harmonic_basis(c));
}

TorsionValue torsion_laplacian(const ChainComplex& c) {
  require_valid(c);
  auto betti = homology_dims(c);
  for (int q = 0; q <= c.top_degree(); ++q) {
    if (betti[q] != 0) {
      throw PreconditionError(
          "torsion_laplacian: complex has homology at " + degree_str(q) +
          "; the Laplacian formula needs acyclicity");
    }
  }

  TorsionValue result;
  result.method = TorsionMethod::kLaplacian;
  for (int q = 1; q <= c.top_degree(); ++q) {
    if (c.dims[q] == 0) continue;
    Matrix lap = combinatorial_laplacian(c, q);
    double sign = (q % 2 == 0) ? -1.0 : 1.0;  // (-1)^{q+1}
    result.log_tau += 0.5 * sign * q * numerics::log_abs_det(lap);
    result.condition_report =
        std::max(result.condition_report, numerics::condition_number(lap));
  }
  result.tau = std::exp(result.log_tau);
  return result;
}

ChainComplex tensor_product(const ChainComplex& c, const ChainComplex& d) {
  require_valid(c);
  require_valid(d);
  int nc = c.top_degree();
  int nd = d.top_degree();
  int n = nc + nd;

  std::vector<Index> dims(n + 1, 0);
  // offset[n][p] = column offset of block C_p (x) D_{n-p} within degree n.
  std::vector<std::vector<Index>> offset(n + 1);
  for (int deg = 0; deg <= n; ++deg) {
    offset[deg].assign(nc + 1, -1);
    Index at = 0;
    for (int p = 0; p <= nc; ++p) {
      int q = deg - p;
      if (q < 0 || q > nd) continue;
      offset[deg][p] = at;
      at += c.dims[p] * d.dims[q];
    }
    dims[deg] = at;
  }

  std::vector<Matrix> maps;
  maps.reserve(n);
  for (int deg = 1; deg <= n; ++deg) {
    Matrix m = Matrix::Zero(dims[deg - 1], dims[deg]);
    for (int p = 0; p <= nc; ++p) {
      int q = deg - p;
      if (q < 0 || q > nd) continue;
      Index col = offset[deg][p];
      Index block = c.dims[p] * d.dims[q];
      if (block == 0) continue;
      if (p >= 1 && c.dims[p - 1] * d.dims[q] > 0) {
        // d_C (x) id, landing in block (p-1, q).
        Matrix k = Eigen::kroneckerProduct(c.boundaries[p],
                                           Matrix::Identity(d.dims[q], d.dims[q]))
                       .eval();
        m.block(offset[deg - 1][p - 1], col, k.rows(), k.cols()) = k;
      }
      if (q >= 1 && c.dims[p] * d.dims[q - 1] > 0) {
        // (-1)^p id (x) d_D, landing in block (p, q-1).
        double sign = (p % 2 == 0) ? 1.0 : -1.0;
        Matrix k = Eigen::kroneckerProduct(Matrix::Identity(c.dims[p], c.dims[p]),
                                           d.boundaries[q])
                       .eval();
        m.block(offset[deg - 1][p], col, k.rows(), k.cols()) = sign * k;
      }
    }
    maps.push_back(std::move(m));
  }

  std::string label = c.label.empty() || d.label.empty()
                          ? std::string()
                          : c.label + " x " + d.label;
  return make_complex(std::move(dims), std::move(maps), std::move(label));
}

}  // namespace torsionlab
