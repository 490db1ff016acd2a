#pragma once

// Dense eigendecomposition with eigenvalue grouping.
//
// Real symmetric matrices are diagonalized by cyclic Jacobi rotations.
// Hermitian matrices go through the real symmetric embedding
// [[Re, -Im], [Im, Re]], whose eigenspaces are the complex ones doubled.

#include <cstddef>
#include <optional>
#include <vector>

#include "dtqw/linalg.hpp"

namespace dtqw {

template <class Scalar>
struct Eigenspace {
  double value = 0.0;
  Matrix<Scalar> projection;
  std::size_t multiplicity = 0;
};

template <class Scalar>
struct SpectralDecomposition {
  std::vector<Eigenspace<Scalar>> eigenspaces;  // ascending eigenvalue order
  double grouping_tolerance = 0.0;
  Matrix<Scalar> source;

  std::size_t dimension() const { return source.rows(); }
  std::size_t size() const { return eigenspaces.size(); }
  const Eigenspace<Scalar>& operator[](std::size_t r) const { return eigenspaces[r]; }
  /// Index of the eigenspace whose value is within `tol` of `lambda`.
  std::optional<std::size_t> find(double lambda, double tol) const;
};

using RealSpectrum = SpectralDecomposition<double>;
using HermitianSpectrum = SpectralDecomposition<Complex>;

struct EigOptions {
  double tolerance = 1e-14;              // off-diagonal Frobenius norm relative to ||M||_F
  std::optional<double> grouping;        // default 1e-8 * max(1, spectral norm)
  int max_sweeps = 50;
  double symmetry_tolerance = 1e-12;
};

struct JacobiResult {
  std::vector<double> values;  // ascending
  RealMatrix vectors;          // row i is the unit eigenvector for values[i]
  int sweeps = 0;
};

/// Raw cyclic Jacobi diagonalization; throws NumericalError on non-convergence.
JacobiResult jacobi_diagonalize(const RealMatrix& m, double tolerance = 1e-14, int max_sweeps = 50);

RealSpectrum sym_eig(const RealMatrix& m, const EigOptions& options = {});
HermitianSpectrum herm_eig(const ComplexMatrix& m, const EigOptions& options = {});

/// Largest violations of the projection-family properties.
struct DecompositionDefects {
  double idempotence = 0.0;
  double orthogonality = 0.0;
  double hermiticity = 0.0;
  double completeness = 0.0;
  double reconstruction = 0.0;  // relative to max(1, max|M|)
};

template <class Scalar>
DecompositionDefects check_decomposition(const SpectralDecomposition<Scalar>& d);

/// E_r evaluated as prod_{s != r}(M - mu_s I) / prod_{s != r}(mu_r - mu_s), using
/// only the source matrix and the distinct eigenvalues.
RealMatrix projection_via_polynomial(const RealSpectrum& d, std::size_t r);

}  // namespace dtqw
