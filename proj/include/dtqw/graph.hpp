#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dtqw/errors.hpp"
#include "dtqw/linalg.hpp"

namespace dtqw {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Vertex-count cap for dense graphs: DTQW_MAX_N if set, otherwise 4096.
std::size_t vertex_cap();

/// Simple undirected graph backed by a dense 0/1 adjacency matrix.
/// Neighbor lists are in ascending vertex order; arc indexing and the coin
/// both depend on that order.
class Graph {
 public:
  Graph() = default;
  /// Throws ParameterError on loops, repeated edges, out-of-range labels or n > vertex_cap().
  Graph(std::size_t n, std::span<const Edge> edges, std::string label = {});

  std::size_t order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_; }
  bool adjacent(Vertex u, Vertex v) const { return adjacency_[u * n_ + v] != 0; }
  std::span<const Vertex> neighbors(Vertex u) const { return neighbors_[u]; }
  std::size_t degree(Vertex u) const { return neighbors_[u].size(); }
  /// Position of v in u's neighbor list, if adjacent.
  std::optional<std::size_t> neighbor_position(Vertex u, Vertex v) const;

  /// Common degree when the graph is regular.
  std::optional<std::size_t> common_degree() const;
  RealMatrix adjacency_matrix() const;
  std::vector<Edge> edges() const;

  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

 private:
  std::size_t n_ = 0;
  std::size_t edges_ = 0;
  std::vector<std::uint8_t> adjacency_;
  std::vector<std::vector<Vertex>> neighbors_;
  std::string label_;
};

// Named families. Vertices are labelled by tuples/subsets in lexicographic order.
Graph build_complete(long n);
Graph build_cycle(long n);
Graph build_path(long n);
Graph build_petersen();
Graph build_hypercube(long d);
Graph build_hamming(long d, long q);
Graph build_johnson(long v, long m);
Graph build_paley(long q);

enum class Family { complete, cycle, petersen, hypercube, hamming, johnson, paley };

struct FamilySpec {
  Family family;
  std::vector<long> params;

  std::string label() const;
};

/// Parses a family id and checks the parameter count.
FamilySpec make_family(std::string_view name, std::vector<long> params);
std::string_view family_name(Family f);
Graph build_family(const FamilySpec& spec);

// Partitions and quotients.

struct Partition {
  std::vector<std::vector<Vertex>> cells;

  std::size_t size() const noexcept { return cells.size(); }
  std::vector<std::size_t> cell_sizes() const;
  /// cell index per vertex; throws ParameterError unless the cells partition 0..n-1.
  std::vector<std::size_t> cell_of(std::size_t n) const;
};

struct QuotientMatrix {
  Matrix<std::int64_t> entries;
  Partition partition;

  bool is_tridiagonal() const;
};

/// BFS layers from `a`. Throws HypothesisError("connected") naming an unreachable vertex.
Partition distance_partition(const Graph& g, Vertex a);
std::vector<std::size_t> distances_from(const Graph& g, Vertex a);  // SIZE_MAX if unreachable
bool is_connected(const Graph& g);

Outcome<QuotientMatrix> check_equitable(const Graph& g, const Partition& p);

// Intersection arrays.

class IntersectionArray {
 public:
  /// Enforces a_0 = 0, c_1 = 1, a_i >= 0 and integral positive k_{i+1}.
  static Outcome<IntersectionArray> validate(std::vector<std::int64_t> b, std::vector<std::int64_t> c);
  /// "b0,b1,...;c1,...,cd". Malformed text throws ParseError; invalid arrays are refused.
  static Outcome<IntersectionArray> parse(std::string_view text);

  std::size_t diameter() const noexcept { return b_.size(); }
  std::int64_t valency() const noexcept { return b_.front(); }
  std::int64_t order() const noexcept { return n_; }
  /// b_i with b_d = 0.
  std::int64_t b(std::size_t i) const { return i < b_.size() ? b_[i] : 0; }
  /// c_i with c_0 = 0.
  std::int64_t c(std::size_t i) const { return i == 0 ? 0 : c_.at(i - 1); }
  std::int64_t a(std::size_t i) const { return a_.at(i); }
  std::int64_t k(std::size_t i) const { return k_.at(i); }
  std::span<const std::int64_t> b_list() const { return b_; }
  std::span<const std::int64_t> c_list() const { return c_; }
  std::span<const std::int64_t> a_list() const { return a_; }
  std::span<const std::int64_t> k_list() const { return k_; }

  /// "{3,2;1,1}"
  std::string to_string() const;
  bool operator==(const IntersectionArray& other) const { return b_ == other.b_ && c_ == other.c_; }

 private:
  IntersectionArray() = default;
  std::vector<std::int64_t> b_, c_, a_, k_;
  std::int64_t n_ = 0;
};

/// Checks distance-regularity from every vertex. Throws HypothesisError for
/// non-regular or disconnected input; refuses with a witness vertex otherwise.
Outcome<IntersectionArray> intersection_array_of(const Graph& g);

// Deletion, Laplacian minors, connectivity.

struct VertexDeleted {
  Graph graph;
  Vertex removed = 0;
  std::vector<std::optional<Vertex>> new_label;  // old -> new
  std::vector<Vertex> old_label;                 // new -> old
};

VertexDeleted vertex_deleted(const Graph& g, Vertex a);
/// kI - A(X\a); requires a regular graph.
RealMatrix laplacian_minor(const Graph& g, Vertex a);
/// Connected, n >= 3 and no cut vertex (checked by deleting every vertex).
bool is_two_connected(const Graph& g);

// Text edge-list format: first line n, then "u v" per edge, '#' comments.
Graph parse_edge_list(std::istream& in, std::string label = {});
Graph read_edge_list(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace dtqw
