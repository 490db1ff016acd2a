#include "dtqw/linalg.hpp"

#include <string>

#include "dtqw/kernels.hpp"

namespace dtqw {

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.rows()) throw ParameterError("matrix product shape mismatch");
  const RealMatrix bt = adjoint(b);
  RealMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = kernels::dot(a.row(i), bt.row(j));
  return out;
}

ComplexMatrix to_complex(const RealMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  auto src = a.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i];
  return out;
}

std::vector<double> cholesky_solve(const RealMatrix& m, std::span<const double> rhs) {
  const std::size_t n = m.rows();
  if (!m.square() || rhs.size() != n) throw ParameterError("cholesky_solve: shape mismatch");
  RealMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = m(j, j) - kernels::dot(l.row(j).first(j), l.row(j).first(j));
    if (!(diag > 0.0))
      throw NumericalError("cholesky_solve: matrix not positive definite at pivot " +
                           std::to_string(j));
    l(j, j) = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i)
      l(i, j) = (m(i, j) - kernels::dot(l.row(i).first(j), l.row(j).first(j))) / l(j, j);
  }
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs[i];
    for (std::size_t j = 0; j < i; ++j) s -= l(i, j) * y[j];
    y[i] = s / l(i, i);
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = y[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= l(j, i) * x[j];
    x[i] = s / l(i, i);
  }
  return x;
}

}  // namespace dtqw
