#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace shadowlp {

using Vector = std::vector<double>;

/// Dense row-major matrix. Desk-scale problems only, so no sparsity.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

/// a + s*b
inline Vector axpy(std::span<const double> a, double s, std::span<const double> b) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
  return r;
}

inline Vector scaled(std::span<const double> a, double s) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

/// LU factorization with partial pivoting of a square basis matrix.
/// Row permutation is stored so that P*A = L*U with unit-diagonal L.
class LUFactors {
 public:
  LUFactors() = default;

  std::size_t dim() const { return dim_; }

  /// Solve A x = rhs.
  Vector solve_right(const Vector& rhs) const;

  /// Solve m^T A = y^T, i.e. A^T m = y.
  Vector solve_left(const Vector& y) const;

  /// Operator 2-norm of A^{-1}, within a factor 2 (power iteration).
  double inverse_norm_estimate(int iterations = 50) const;

  friend LUFactors lu_factorize(const Matrix& m, double singular_tol);

 private:
  std::size_t dim_ = 0;
  Matrix lu_;
  std::vector<int> perm_;
};

/// Factorize with an explicit absolute pivot threshold.
/// Throws SingularBasis when a pivot falls below singular_tol.
LUFactors lu_factorize(const Matrix& m, double singular_tol);

/// Factorize with the default threshold, 1e-10 relative to the largest
/// row norm of the matrix.
LUFactors lu_factorize(const Matrix& m);

}  // namespace shadowlp
