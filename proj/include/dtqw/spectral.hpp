#pragma once

// Spectral side of the walk: the augmented Hermitian matrix on n+k-2
// coordinates whose interior spectrum maps to the walk eigenphases via
// lambda = k cos(theta), the eigenprojections of U rebuilt from it, and the
// closed-form average search probability.

#include <cstddef>
#include <string>
#include <vector>

#include "dtqw/eigen.hpp"
#include "dtqw/graph.hpp"
#include "dtqw/walk.hpp"

namespace dtqw {

/// k x (k-1) block with entry (j, m-1) = exp(2 pi i j m / k), m = 1..k-1.
ComplexMatrix vandermonde_block(std::size_t k);

struct AugmentedMatrix {
  ComplexMatrix entries;
  std::size_t degree = 0;
  Vertex marked = 0;
  std::size_t clone_count = 0;  // k - 1; coordinates 0..k-2
  VertexDeleted deleted;        // coordinate of old vertex u != a is clone_count + new_label[u]
  std::vector<std::size_t> neighbor_rows;  // row of a's j-th neighbour

  std::size_t dimension() const noexcept { return entries.rows(); }
  std::size_t coordinate_of(Vertex u) const { return clone_count + *deleted.new_label.at(u); }
};

/// Throws HypothesisError unless g is regular with k >= 2.
AugmentedMatrix build_augmented(const Graph& g, Vertex a);

/// Block-diagonal N (nk x (n+k-2)) in the arc layout of ArcSpace: the
/// Vandermonde block in a's slot and all-ones columns elsewhere.
ComplexMatrix arc_embedding(const AugmentedMatrix& aug, const ArcSpace& arcs);

struct Eigenphase {
  double theta = 0.0;   // in (0, pi)
  double lambda = 0.0;  // eigenvalue of the augmented matrix, k cos(theta)
  std::size_t multiplicity = 0;
  std::size_t eigenspace = 0;  // index into EigenphaseSet::spectrum
};

struct EigenphaseSet {
  HermitianSpectrum spectrum;
  std::vector<Eigenphase> interior;
  std::vector<std::size_t> boundary;  // eigenspaces at +-k (within relative 1e-10)
  std::size_t degree = 0;
};

EigenphaseSet walk_eigenphases(const AugmentedMatrix& aug);
EigenphaseSet walk_eigenphases(const Graph& g, Vertex a);

/// F_theta = (N - e^{i s theta} R N) E (N - e^{i s theta} R N)^* / (2k sin^2 theta),
/// with theta = arccos(lambda/k) and s = +1 (or -1 for the conjugate phase).
/// Throws NumericalError when |lambda| >= k.
ComplexMatrix reconstruct_F(const Graph& g, Vertex a, double lambda, const ComplexMatrix& projection,
                            int phase_sign = +1);

/// F_theta x without forming the nk x nk matrix.
std::vector<Complex> apply_F(const AugmentedMatrix& aug, const ArcSpace& arcs, double lambda,
                             const ComplexMatrix& projection, std::span<const Complex> x);

struct ContributionRow {
  double lambda = 0.0;
  std::size_t multiplicity = 0;
  double ev_e1 = 0.0;      // e_v^T E_lambda 1
  double s1_term = 0.0;    // (1/n) k^3 / ((k-lambda)(k+lambda)^2) (e_v^T E_lambda 1)^2
  double s2_weight = 0.0;  // k / (k + lambda) e_v^T E_lambda 1
};

struct AvgSearchReport {
  std::string graph_id;
  Vertex marked = 0;
  Vertex witness = 0;  // the neighbour v used for the rows
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<ContributionRow> rows;
  double s1 = 0.0;
  double s2 = 0.0;
  double total = 0.0;
  double witness_spread = 0.0;  // max |total(v) - total(v')| over neighbours v, v'
  std::string method = "closed-form";
};

/// Refuses when the distance partition at `a` is not equitable or when the
/// result depends on the chosen neighbour by more than 1e-9.
Outcome<AvgSearchReport> closed_form_average(const Graph& g, Vertex a);

/// Limit of the time-averaged arc distribution, sum_r |F_r x0|^2, with F_pi x0
/// completed from the identity. Refuses unless g is 2-connected.
Outcome<std::vector<double>> spectral_average_from_x0(const Graph& g, Vertex a);

}  // namespace dtqw
