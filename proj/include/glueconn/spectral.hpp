#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "glueconn/eigen_sym.hpp"
#include "glueconn/error.hpp"
#include "glueconn/graph.hpp"
#include "glueconn/matrix.hpp"

namespace glueconn {

/// Eigenvalues at or below this magnitude count as zero.
inline constexpr double kZeroEigenvalueTolerance = 1e-8;
/// Grounded blocks whose smallest eigenvalue exceeds this are positive definite.
inline constexpr double kPositiveDefiniteTolerance = 1e-10;

struct SpectralReport {
  std::vector<double> eigenvalues;  // ascending, repeats allowed
  double fiedler_value = 0.0;
  std::vector<double> fiedler_vector;  // unit norm, orthogonal to 1, first significant entry > 0
  std::size_t zero_multiplicity = 0;

  bool connected() const { return fiedler_value > kZeroEigenvalueTolerance; }
  double largest() const { return eigenvalues.back(); }
};

namespace detail {

inline void normalize_sign(std::vector<double>& v) {
  for (double x : v) {
    if (std::abs(x) > 1e-8) {
      if (x < 0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

}  // namespace detail

/// Full Laplacian spectrum plus the Fiedler pair.
///
/// When the graph is disconnected the Fiedler vector is taken from the null
/// space, orthogonal to the all-ones vector.
inline SpectralReport fiedler(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n < 2)
    throw Error(ErrorKind::domain, "the Fiedler eigenvalue needs at least 2 vertices (got " +
                                       std::to_string(n) + ")");
  const auto eig = eig_sym(laplacian(g));

  SpectralReport r;
  r.eigenvalues = eig.values;
  for (double lam : r.eigenvalues)
    if (std::abs(lam) <= kZeroEigenvalueTolerance) ++r.zero_multiplicity;
  r.fiedler_value = r.eigenvalues[1];

  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  auto deflate_ones = [&](std::vector<double> v) {
    double along = 0.0;
    for (double x : v) along += x * inv_sqrt_n;
    for (double& x : v) x -= along * inv_sqrt_n;
    return v;
  };

  std::vector<double> best;
  if (r.zero_multiplicity >= 2) {
    // Pick the null-space basis vector with the largest component off span{1}.
    double best_norm = -1.0;
    for (std::size_t j = 0; j < r.zero_multiplicity; ++j) {
      auto cand = deflate_ones(eig.vectors.column(j));
      const double nrm = norm2(cand);
      if (nrm > best_norm) {
        best_norm = nrm;
        best = std::move(cand);
      }
    }
  } else {
    best = deflate_ones(eig.vectors.column(1));
  }
  const double nrm = norm2(best);
  for (double& x : best) x /= nrm;
  detail::normalize_sign(best);
  r.fiedler_vector = std::move(best);
  return r;
}

/// L(G) permuted so that non-interface vertices come first:
///   L = [ A  B ]
///       [ B' D ]
/// with D indexed by the interface vertices.
struct BlockDecomposition {
  SymMatrix a_block;
  Matrix b_block;
  SymMatrix d_block;
  std::vector<Vertex> interior;   // rows/cols of A, ascending
  std::vector<Vertex> interface;  // rows/cols of D, in the order supplied

  std::vector<Vertex> ordering() const {
    std::vector<Vertex> o = interior;
    o.insert(o.end(), interface.begin(), interface.end());
    return o;
  }

  /// [A B; B' D] in block order.
  SymMatrix reassemble() const {
    const std::size_t na = interior.size();
    const std::size_t n = na + interface.size();
    Matrix m(n, n);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < na; ++j) m(i, j) = a_block(i, j);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < interface.size(); ++j) {
        m(i, na + j) = b_block(i, j);
        m(na + j, i) = b_block(i, j);
      }
    for (std::size_t i = 0; i < interface.size(); ++i)
      for (std::size_t j = 0; j < interface.size(); ++j) m(na + i, na + j) = d_block(i, j);
    return SymMatrix(std::move(m));
  }
};

/// Interface vertices keep the order given in `y`; the remaining vertices are
/// listed in ascending order.
inline BlockDecomposition block_decompose(const Graph& g, const std::vector<Vertex>& y) {
  const VertexSet yset(g, y);
  if (yset.empty()) throw Error(ErrorKind::precondition, "interface set is empty");
  if (yset.size() == g.vertex_count())
    throw Error(ErrorKind::precondition,
                "interface set covers every vertex; the grounded block would be empty");

  const SymMatrix l = laplacian(g);
  BlockDecomposition d;
  d.interface = y;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!yset.contains(v)) d.interior.push_back(v);

  const std::size_t na = d.interior.size();
  const std::size_t ny = d.interface.size();
  d.a_block = SymMatrix(na);
  d.b_block = Matrix(na, ny);
  d.d_block = SymMatrix(ny);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = i; j < na; ++j) d.a_block.set(i, j, l(d.interior[i], d.interior[j]));
    for (std::size_t j = 0; j < ny; ++j) d.b_block(i, j) = l(d.interior[i], d.interface[j]);
  }
  for (std::size_t i = 0; i < ny; ++i)
    for (std::size_t j = i; j < ny; ++j) d.d_block.set(i, j, l(d.interface[i], d.interface[j]));
  return d;
}

inline BlockDecomposition block_decompose(const Graph& g, const VertexSet& y) {
  return block_decompose(g, y.members());
}

struct GroundedEigen {
  double value = 0.0;
  std::vector<double> vector;  // eigenvector of A, unit norm
  bool positive_definite = false;
};

/// Smallest eigenpair of the grounded Laplacian A.
inline GroundedEigen grounded_smallest_eigenpair(const BlockDecomposition& d) {
  if (d.a_block.order() == 0) throw Error(ErrorKind::precondition, "grounded block is empty");
  const auto eig = eig_sym(d.a_block);
  GroundedEigen out;
  out.value = eig.values.front();
  out.vector = eig.vectors.column(0);
  detail::normalize_sign(out.vector);
  out.positive_definite = out.value > kPositiveDefiniteTolerance;
  return out;
}

inline double grounded_smallest_eig(const BlockDecomposition& d) {
  return grounded_smallest_eigenpair(d).value;
}

}  // namespace glueconn
