#include "shadowlp/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "shadowlp/errors.hpp"

namespace shadowlp {

LUFactors lu_factorize(const Matrix& m, double singular_tol) {
  const std::size_t d = m.rows();
  LUFactors f;
  f.dim_ = d;
  f.lu_ = m;
  f.perm_.resize(d);
  for (std::size_t i = 0; i < d; ++i) f.perm_[i] = static_cast<int>(i);

  Matrix& lu = f.lu_;
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < d; ++i) {
      double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best < singular_tol) throw SingularBasis(k);
    if (piv != k) {
      for (std::size_t j = 0; j < d; ++j) std::swap(lu(k, j), lu(piv, j));
      std::swap(f.perm_[k], f.perm_[piv]);
    }
    const double pivot = lu(k, k);
    for (std::size_t i = k + 1; i < d; ++i) {
      const double factor = lu(i, k) / pivot;
      lu(i, k) = factor;
      for (std::size_t j = k + 1; j < d; ++j) lu(i, j) -= factor * lu(k, j);
    }
  }
  return f;
}

LUFactors lu_factorize(const Matrix& m) {
  double max_row_norm = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    max_row_norm = std::max(max_row_norm, norm2(m.row(i)));
  return lu_factorize(m, 1e-10 * std::max(max_row_norm, 1e-300));
}

Vector LUFactors::solve_right(const Vector& rhs) const {
  const std::size_t d = dim_;
  Vector x(d);
  // Forward substitution on the permuted rhs, L has unit diagonal.
  for (std::size_t i = 0; i < d; ++i) {
    double s = rhs[static_cast<std::size_t>(perm_[i])];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t ii = d; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t j = ii + 1; j < d; ++j) s -= lu_(ii, j) * x[j];
    x[ii] = s / lu_(ii, ii);
  }
  return x;
}

Vector LUFactors::solve_left(const Vector& y) const {
  const std::size_t d = dim_;
  // A^T m = y with A = P^{-1} L U, so U^T w = y, L^T g = w, m = P^{-1} g.
  Vector w(d);
  for (std::size_t i = 0; i < d; ++i) {
    double s = y[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(j, i) * w[j];
    w[i] = s / lu_(i, i);
  }
  Vector g(d);
  for (std::size_t ii = d; ii-- > 0;) {
    double s = w[ii];
    for (std::size_t j = ii + 1; j < d; ++j) s -= lu_(j, ii) * g[j];
    g[ii] = s;
  }
  Vector m(d);
  for (std::size_t i = 0; i < d; ++i) m[static_cast<std::size_t>(perm_[i])] = g[i];
  return m;
}

double LUFactors::inverse_norm_estimate(int iterations) const {
  const std::size_t d = dim_;
  // Power iteration on A^{-T} A^{-1}; the start vector has unequal entries
  // so it cannot be orthogonal to the top singular direction by symmetry.
  Vector x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = 1.0 + 0.01 * static_cast<double>(i + 1);
  double nx = norm2(x);
  for (double& v : x) v /= nx;

  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vector y = solve_right(x);
    Vector z = solve_left(y);
    lambda = norm2(z);
    if (lambda < 1e-300) return 0.0;
    for (std::size_t i = 0; i < d; ++i) x[i] = z[i] / lambda;
  }
  return std::sqrt(lambda);
}

}  // namespace shadowlp
