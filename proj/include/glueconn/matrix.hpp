#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "glueconn/error.hpp"

namespace glueconn {

/// Dense row-major real matrix.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  std::vector<double> column(std::size_t j) const {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (double v : m.data()) s += v * v;
  return std::sqrt(s);
}

/// Square matrix that is symmetric to within 1e-12 relative to its scale.
/// Construction from arbitrary entries validates symmetry; mutation goes
/// through set(), which writes both triangles.
class SymMatrix {
public:
  static constexpr double kSymmetryTolerance = 1e-12;

  SymMatrix() = default;
  explicit SymMatrix(std::size_t order) : m_(order, order) {}

  /// Throws Error(domain) when `m` is not square or not symmetric.
  explicit SymMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols())
      throw Error(ErrorKind::domain, "matrix is not square (" + std::to_string(m_.rows()) +
                                         "x" + std::to_string(m_.cols()) + ")");
    const double tol = kSymmetryTolerance * std::max(1.0, frobenius_norm(m_));
    for (std::size_t i = 0; i < m_.rows(); ++i)
      for (std::size_t j = i + 1; j < m_.cols(); ++j)
        if (std::abs(m_(i, j) - m_(j, i)) > tol)
          throw Error(ErrorKind::domain, "matrix is not symmetric at (" + std::to_string(i) +
                                             "," + std::to_string(j) + ")");
  }

  SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : SymMatrix(from_rows(rows)) {}

  std::size_t order() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  void set(std::size_t i, std::size_t j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  void add(std::size_t i, std::size_t j, double v) {
    m_(i, j) += v;
    if (i != j) m_(j, i) += v;
  }

  const Matrix& dense() const noexcept { return m_; }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < order(); ++i) t += m_(i, i);
    return t;
  }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

private:
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t n = rows.size();
    Matrix m(n, n);
    std::size_t i = 0;
    for (const auto& r : rows) {
      if (r.size() != n) throw Error(ErrorKind::domain, "ragged matrix literal");
      std::size_t j = 0;
      for (double v : r) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  Matrix m_;
};

inline std::vector<double> multiply(const Matrix& m, std::span<const double> x) {
  std::vector<double> y(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    const auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

inline std::vector<double> multiply(const SymMatrix& m, std::span<const double> x) {
  return multiply(m.dense(), x);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace glueconn
