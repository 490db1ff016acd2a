#include "dtqw/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dtqw/kernels.hpp"

namespace dtqw {

template <class Scalar>
std::optional<std::size_t> SpectralDecomposition<Scalar>::find(double lambda, double tol) const {
  for (std::size_t r = 0; r < eigenspaces.size(); ++r)
    if (std::abs(eigenspaces[r].value - lambda) <= tol) return r;
  return std::nullopt;
}

template struct SpectralDecomposition<double>;
template struct SpectralDecomposition<Complex>;

JacobiResult jacobi_diagonalize(const RealMatrix& m, double tolerance, int max_sweeps) {
  if (!m.square()) throw ParameterError("jacobi_diagonalize: matrix is not square");
  const std::size_t n = m.rows();
  RealMatrix a = m;
  // Rows of w are the accumulated eigenvectors (w = V^T) so every rotation
  // touches two contiguous rows.
  RealMatrix w = RealMatrix::identity(n);
  const double scale = frobenius_norm(m);
  const auto& k = kernels::active();

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * a(p, q) * a(p, q);
    return std::sqrt(s);
  };

  int sweep = 0;
  for (;; ++sweep) {
    if (scale == 0.0 || off_norm() <= tolerance * scale) break;
    if (sweep >= max_sweeps)
      throw NumericalError("jacobi_diagonalize: no convergence after " +
                           std::to_string(max_sweeps) + " sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Negligible relative to both diagonal entries: drop it.
        if (sweep > 3 && std::abs(apq) * 1e18 < std::abs(app) &&
            std::abs(apq) * 1e18 < std::abs(aqq)) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // Row update J^T A on rows p, q; columns follow by symmetry.
        k.rotate_pair(a.row(p).data(), a.row(q).data(), n, c, s);
        for (std::size_t j = 0; j < n; ++j) {
          if (j == p || j == q) continue;
          a(j, p) = a(p, j);
          a(j, q) = a(q, j);
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;

        k.rotate_pair(w.row(p).data(), w.row(q).data(), n, c, s);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  JacobiResult out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors = RealMatrix(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    out.values[r] = a(order[r], order[r]);
    std::copy(w.row(order[r]).begin(), w.row(order[r]).end(), out.vectors.row(r).begin());
  }
  return out;
}

namespace {

double default_grouping(const std::vector<double>& values) {
  double spectral = 0.0;
  for (double v : values) spectral = std::max(spectral, std::abs(v));
  return 1e-8 * std::max(1.0, spectral);
}

// Consecutive (ascending) eigenvalues closer than `tol` share a group.
std::vector<std::pair<std::size_t, std::size_t>> group_ranges(const std::vector<double>& values,
                                                              double tol) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= values.size(); ++i) {
    if (i == values.size() || values[i] - values[i - 1] > tol) {
      ranges.emplace_back(begin, i);
      begin = i;
    }
  }
  return ranges;
}

}  // namespace

RealSpectrum sym_eig(const RealMatrix& m, const EigOptions& options) {
  if (!m.square()) throw ParameterError("sym_eig: matrix is not square");
  if (hermitian_defect(m) > options.symmetry_tolerance)
    throw ParameterError("sym_eig: matrix is not symmetric");
  const JacobiResult jr = jacobi_diagonalize(m, options.tolerance, options.max_sweeps);
  const std::size_t n = m.rows();

  RealSpectrum out;
  out.source = m;
  out.grouping_tolerance = options.grouping.value_or(default_grouping(jr.values));
  for (auto [begin, end] : group_ranges(jr.values, out.grouping_tolerance)) {
    Eigenspace<double> es;
    es.multiplicity = end - begin;
    double sum = 0.0;
    for (std::size_t r = begin; r < end; ++r) sum += jr.values[r];
    es.value = sum / static_cast<double>(es.multiplicity);
    es.projection = RealMatrix(n, n);
    for (std::size_t r = begin; r < end; ++r) {
      auto v = jr.vectors.row(r);
      for (std::size_t i = 0; i < n; ++i) {
        if (v[i] == 0.0) continue;
        auto dst = es.projection.row(i);
        for (std::size_t j = 0; j < n; ++j) dst[j] += v[i] * v[j];
      }
    }
    out.eigenspaces.push_back(std::move(es));
  }
  return out;
}

HermitianSpectrum herm_eig(const ComplexMatrix& m, const EigOptions& options) {
  if (!m.square()) throw ParameterError("herm_eig: matrix is not square");
  if (hermitian_defect(m) > options.symmetry_tolerance)
    throw ParameterError("herm_eig: matrix is not Hermitian");
  const std::size_t n = m.rows();
  RealMatrix embedded(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double re = m(i, j).real();
      const double im = m(i, j).imag();
      embedded(i, j) = re;
      embedded(i + n, j + n) = re;
      embedded(i, j + n) = -im;
      embedded(i + n, j) = im;
    }
  }
  EigOptions inner = options;
  inner.symmetry_tolerance = 2.0 * options.symmetry_tolerance;
  const RealSpectrum real = sym_eig(embedded, inner);

  HermitianSpectrum out;
  out.source = m;
  out.grouping_tolerance = real.grouping_tolerance;
  for (const auto& es : real.eigenspaces) {
    if (es.multiplicity % 2 != 0)
      throw NumericalError("herm_eig: embedded eigenvalue " + std::to_string(es.value) +
                           " has odd multiplicity; grouping tolerance inconsistent");
    Eigenspace<Complex> ces;
    ces.value = es.value;
    ces.multiplicity = es.multiplicity / 2;
    ces.projection = ComplexMatrix(n, n);
    // Embedded projection is [[X, -Y], [Y, X]] for the complex projection X + iY.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        ces.projection(i, j) = Complex(es.projection(i, j), es.projection(i + n, j));
    out.eigenspaces.push_back(std::move(ces));
  }
  return out;
}

template <class Scalar>
DecompositionDefects check_decomposition(const SpectralDecomposition<Scalar>& d) {
  DecompositionDefects out;
  const std::size_t n = d.dimension();
  Matrix<Scalar> sum(n, n);
  Matrix<Scalar> recon(n, n);
  for (std::size_t r = 0; r < d.size(); ++r) {
    const auto& e = d[r].projection;
    out.idempotence = std::max(out.idempotence, max_abs_diff(e * e, e));
    out.hermiticity = std::max(out.hermiticity, hermitian_defect(e));
    for (std::size_t s = r + 1; s < d.size(); ++s)
      out.orthogonality = std::max(out.orthogonality, max_abs(e * d[s].projection));
    sum = sum + e;
    recon = recon + scaled(e, d[r].value);
  }
  out.completeness = max_abs_diff(sum, Matrix<Scalar>::identity(n));
  out.reconstruction = max_abs_diff(recon, d.source) / std::max(1.0, max_abs(d.source));
  return out;
}

template DecompositionDefects check_decomposition(const RealSpectrum&);
template DecompositionDefects check_decomposition(const HermitianSpectrum&);

RealMatrix projection_via_polynomial(const RealSpectrum& d, std::size_t r) {
  if (r >= d.size()) throw ParameterError("projection_via_polynomial: index out of range");
  const std::size_t n = d.dimension();
  const double mu_r = d[r].value;
  RealMatrix product = RealMatrix::identity(n);
  double denominator = 1.0;
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (s == r) continue;
    const double gap = mu_r - d[s].value;
    if (std::abs(gap) <= d.grouping_tolerance)
      throw NumericalError("projection_via_polynomial: eigenvalues " + std::to_string(r) + " and " +
                           std::to_string(s) + " are not distinct");
    RealMatrix shifted = d.source;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= d[s].value;
    product = product * shifted;
    denominator *= gap;
  }
  return scaled(std::move(product), 1.0 / denominator);
}

}  // namespace dtqw
