#pragma once

// Coined quantum walk with a marked-vertex oracle on the arcs of a regular
// graph. U = R C O_a, applied matrix-free: O first, then C, then R.
//
// O_a = (I - 2E_aa) x I negates the arcs leaving a, so that C O_a is the
// reflection (2/k) N N^* - I about the columns of the embedding N. The other
// sign convention gives -U: the same probabilities, with every eigenphase
// shifted by pi.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dtqw/graph.hpp"
#include "dtqw/linalg.hpp"

namespace dtqw {

/// Arc (u -> j-th neighbour of u) has index u*k + j.
class ArcSpace {
 public:
  /// Throws HypothesisError unless g is regular with k >= 2.
  explicit ArcSpace(Graph g);

  const Graph& graph() const noexcept { return graph_; }
  std::size_t vertex_count() const noexcept { return graph_.order(); }
  std::size_t degree() const noexcept { return k_; }
  std::size_t size() const noexcept { return graph_.order() * k_; }

  std::size_t index(Vertex u, std::size_t j) const { return u * k_ + j; }
  /// Index of arc u -> v; throws ParameterError if u, v are not adjacent.
  std::size_t arc(Vertex u, Vertex v) const;
  Edge endpoints(std::size_t idx) const;
  /// rev[idx(u->v)] = idx(v->u)
  std::span<const std::int32_t> reversal() const noexcept { return reversal_; }

 private:
  Graph graph_;
  std::size_t k_ = 0;
  std::vector<std::int32_t> reversal_;
};

/// Amplitudes over arcs. U is real, so storage is real; the complex view is
/// for interoperability with the spectral side.
class WalkState {
 public:
  WalkState() = default;
  explicit WalkState(std::vector<double> amplitudes) : amp_(std::move(amplitudes)) {}
  /// Throws ParameterError if any imaginary part exceeds 1e-14.
  static WalkState from_complex(std::span<const Complex> amplitudes);

  std::size_t size() const noexcept { return amp_.size(); }
  std::span<const double> real() const noexcept { return amp_; }
  std::span<double> real() noexcept { return amp_; }
  std::vector<Complex> amplitudes() const;
  double norm() const;

 private:
  std::vector<double> amp_;
};

WalkState initial_state(const ArcSpace& arcs);

class WalkOperators {
 public:
  WalkOperators(ArcSpace arcs, Vertex marked);

  const ArcSpace& arcs() const noexcept { return arcs_; }
  Vertex marked() const noexcept { return marked_; }
  std::size_t degree() const noexcept { return arcs_.degree(); }

  WalkState apply_R(const WalkState& s) const;
  WalkState apply_C(const WalkState& s) const;
  WalkState apply_O(const WalkState& s) const;
  WalkState apply_U(const WalkState& s) const;

  /// out = U in; `scratch` must have the same length. No allocation.
  void step(std::span<const double> in, std::span<double> out, std::span<double> scratch) const;

 private:
  void check_length(std::size_t len) const;

  ArcSpace arcs_;
  Vertex marked_;
};

/// Probability mass on the arcs leaving the marked vertex.
double marked_mass(const WalkOperators& ops, std::span<const double> distribution);

double search_probability_at(const WalkOperators& ops, std::size_t t);
/// (1/T) sum_{t<T} |U^t x0|^2 entrywise.
std::vector<double> time_average_distribution(const WalkOperators& ops, std::size_t T);
double empirical_average_search_probability(const WalkOperators& ops, std::size_t T);

/// Largest arc count for which U may be materialized densely.
inline constexpr std::size_t kMaterializeCap = 60;
/// Dense R, C, O_a, U built entrywise from their definitions (nk <= kMaterializeCap).
struct DenseWalk {
  RealMatrix R, C, O, U;
};
DenseWalk materialize(const WalkOperators& ops);

}  // namespace dtqw
