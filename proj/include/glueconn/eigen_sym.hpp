#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "glueconn/error.hpp"
#include "glueconn/matrix.hpp"

namespace glueconn {

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j pairs with values[j]; orthonormal
  int sweeps = 0;
};

struct JacobiOptions {
  double relative_tolerance = 1e-12;
  int max_sweeps = 100;
};

namespace detail {

inline double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace detail

/// Cyclic Jacobi diagonalization of a real symmetric matrix.
///
/// Sweeps over all (p,q) pairs, annihilating a(p,q) with a plane rotation
/// each time, until the off-diagonal Frobenius norm drops below
/// relative_tolerance * ||M||_F. Eigenvalues are returned in ascending order
/// with their eigenvectors as matching columns.
inline EigenDecomposition eig_sym(const SymMatrix& m, const JacobiOptions& opts = {}) {
  const std::size_t n = m.order();
  Matrix a = m.dense();
  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  const double scale = frobenius_norm(a);
  const double target = opts.relative_tolerance * scale;

  int sweep = 0;
  double off = detail::off_diagonal_norm(a);
  while (off > target) {
    if (sweep == opts.max_sweeps)
      throw Error(ErrorKind::numerical,
                  "Jacobi eigensolver did not converge after " + std::to_string(sweep) +
                      " sweeps (off-diagonal norm " + std::to_string(off) + ")");
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle chosen so the updated a(p,q) vanishes; the smaller
        // root of t^2 + 2*theta*t - 1 = 0 keeps |angle| <= pi/4.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          const double np = arp - s * (arq + tau * arp);
          const double nq = arq + s * (arp - tau * arq);
          a(r, p) = a(p, r) = np;
          a(r, q) = a(q, r) = nq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
    off = detail::off_diagonal_norm(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigenDecomposition out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

inline std::vector<double> eigenvalues(const SymMatrix& m) { return eig_sym(m).values; }

/// ||M v - lambda v|| for eigenpair j.
inline double residual(const SymMatrix& m, const EigenDecomposition& e, std::size_t j) {
  const auto vec = e.vectors.column(j);
  auto mv = multiply(m, vec);
  for (std::size_t i = 0; i < mv.size(); ++i) mv[i] -= e.values[j] * vec[i];
  return norm2(mv);
}

}  // namespace glueconn
