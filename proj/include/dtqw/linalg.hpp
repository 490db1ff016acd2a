#pragma once

// Small row-major dense matrices. Everything in scope is desk scale
// (dimension in the low thousands at most), so no blocking or BLAS.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

#include "dtqw/errors.hpp"

namespace dtqw {

using Complex = std::complex<double>;

template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;

namespace detail {
template <class T>
T conj_if_complex(const T& x) {
  if constexpr (std::is_same_v<T, Complex>) {
    return std::conj(x);
  } else {
    return x;
  }
}
template <class A, class B>
void require_same_shape(const Matrix<A>& a, const Matrix<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ParameterError("matrix shape mismatch");
}
}  // namespace detail

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw ParameterError("matrix product shape mismatch");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const T ail = a(i, l);
      if (ail == T{}) continue;
      auto src = b.row(l);
      auto dst = out.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) dst[j] += ail * src[j];
    }
  }
  return out;
}

/// Real product routed through the dispatched dot kernel.
RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);

template <class T>
std::vector<T> operator*(const Matrix<T>& a, std::span<const T> x) {
  if (a.cols() != x.size()) throw ParameterError("matrix-vector shape mismatch");
  std::vector<T> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    T sum{};
    auto r = a.row(i);
    for (std::size_t j = 0; j < x.size(); ++j) sum += r[j] * x[j];
    y[i] = sum;
  }
  return y;
}
template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x) {
  return a * std::span<const T>(x);
}

template <class T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T>& b) {
  detail::require_same_shape(a, b);
  auto d = a.data();
  auto s = b.data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += s[i];
  return a;
}

template <class T>
Matrix<T> operator-(Matrix<T> a, const Matrix<T>& b) {
  detail::require_same_shape(a, b);
  auto d = a.data();
  auto s = b.data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= s[i];
  return a;
}

template <class T, class S>
Matrix<T> scaled(Matrix<T> a, S factor) {
  for (auto& x : a.data()) x *= factor;
  return a;
}

/// Conjugate transpose (plain transpose for real matrices).
template <class T>
Matrix<T> adjoint(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = detail::conj_if_complex(a(i, j));
  return out;
}

template <class T>
double max_abs(const Matrix<T>& a) {
  double m = 0.0;
  for (const auto& x : a.data()) m = std::max(m, static_cast<double>(std::abs(x)));
  return m;
}

template <class T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  detail::require_same_shape(a, b);
  double m = 0.0;
  auto x = a.data();
  auto y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, static_cast<double>(std::abs(x[i] - y[i])));
  return m;
}

template <class T>
double frobenius_norm(const Matrix<T>& a) {
  double sum = 0.0;
  for (const auto& x : a.data()) sum += std::norm(x);
  return std::sqrt(sum);
}

/// Largest |M - M^*| entry; zero for Hermitian input.
template <class T>
double hermitian_defect(const Matrix<T>& a) {
  if (!a.square()) throw ParameterError("hermitian_defect: matrix is not square");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      m = std::max(m, static_cast<double>(std::abs(a(i, j) - detail::conj_if_complex(a(j, i)))));
  return m;
}

template <class T>
T trace(const Matrix<T>& a) {
  T sum{};
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) sum += a(i, i);
  return sum;
}

ComplexMatrix to_complex(const RealMatrix& a);

/// Solves M x = rhs for symmetric positive definite M by Cholesky factorization.
std::vector<double> cholesky_solve(const RealMatrix& m, std::span<const double> rhs);

}  // namespace dtqw
