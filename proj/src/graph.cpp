#include "dtqw/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <deque>
#include <limits>
#include <numeric>

namespace dtqw {

std::size_t vertex_cap() {
  const char* env = std::getenv("DTQW_MAX_N");
  if (env == nullptr || *env == '\0') return 4096;
  std::size_t value = 0;
  const std::string_view text(env);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0)
    throw ParameterError("DTQW_MAX_N must be a positive integer, got '" + std::string(text) + "'");
  return value;
}

Graph::Graph(std::size_t n, std::span<const Edge> edges, std::string label)
    : n_(n), adjacency_(n * n, 0), neighbors_(n), label_(std::move(label)) {
  if (n > vertex_cap())
    throw SizeCapError("graph on " + std::to_string(n) + " vertices exceeds the size cap " +
                         std::to_string(vertex_cap()));
  for (auto [u, v] : edges) {
    if (u >= n || v >= n)
      throw ParameterError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                           ") out of range for n = " + std::to_string(n));
    if (u == v) throw ParameterError("loop at vertex " + std::to_string(u));
    if (adjacency_[u * n + v] != 0)
      throw ParameterError("repeated edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    adjacency_[u * n + v] = adjacency_[v * n + u] = 1;
    ++edges_;
  }
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (adjacency_[u * n + v] != 0) neighbors_[u].push_back(v);
}

std::optional<std::size_t> Graph::neighbor_position(Vertex u, Vertex v) const {
  const auto& list = neighbors_[u];
  auto it = std::lower_bound(list.begin(), list.end(), v);
  if (it == list.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - list.begin());
}

std::optional<std::size_t> Graph::common_degree() const {
  if (n_ == 0) return std::nullopt;
  const std::size_t k = neighbors_[0].size();
  for (const auto& list : neighbors_)
    if (list.size() != k) return std::nullopt;
  return k;
}

RealMatrix Graph::adjacency_matrix() const {
  RealMatrix a(n_, n_);
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v : neighbors_[u]) a(u, v) = 1.0;
  return a;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_);
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v : neighbors_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

// ---------------------------------------------------------------------------
// Families

namespace {

std::size_t checked_order(long n, const char* what) {
  if (n < 0 || static_cast<unsigned long>(n) > vertex_cap())
    throw SizeCapError(std::string(what) + " on " + std::to_string(n) +
                         " vertices exceeds the size cap " + std::to_string(vertex_cap()));
  return static_cast<std::size_t>(n);
}

// q^d with a cap check instead of overflow.
std::size_t capped_power(long q, long d, const char* what) {
  std::size_t value = 1;
  for (long i = 0; i < d; ++i) {
    value *= static_cast<std::size_t>(q);
    if (value > vertex_cap())
      throw SizeCapError(std::string(what) + " exceeds the size cap " + std::to_string(vertex_cap()));
  }
  return value;
}

bool is_prime(long q) {
  if (q < 2) return false;
  for (long p = 2; p * p <= q; ++p)
    if (q % p == 0) return false;
  return true;
}

// All m-subsets of {0..v-1} in lexicographic order, as sorted vectors.
std::vector<std::vector<int>> subsets(long v, long m) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(m));
  std::iota(current.begin(), current.end(), 0);
  while (true) {
    out.push_back(current);
    if (out.size() > vertex_cap())
      throw SizeCapError("subset family exceeds the size cap " + std::to_string(vertex_cap()));
    long i = m - 1;
    while (i >= 0 && current[static_cast<std::size_t>(i)] == v - m + i) --i;
    if (i < 0) break;
    ++current[static_cast<std::size_t>(i)];
    for (long j = i + 1; j < m; ++j)
      current[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::size_t intersection_size(const std::vector<int>& x, const std::vector<int>& y) {
  std::size_t count = 0;
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace

Graph build_complete(long n) {
  if (n < 3) throw ParameterError("complete graph needs n >= 3 (walk coin undefined for k < 2)");
  const std::size_t order = checked_order(n, "complete graph");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < order; ++u)
    for (Vertex v = u + 1; v < order; ++v) edges.emplace_back(u, v);
  return Graph(order, edges, "complete(" + std::to_string(n) + ")");
}

Graph build_cycle(long n) {
  if (n < 3) throw ParameterError("cycle needs n >= 3");
  const std::size_t order = checked_order(n, "cycle");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < order; ++u) edges.emplace_back(u, (u + 1) % order);
  return Graph(order, edges, "cycle(" + std::to_string(n) + ")");
}

Graph build_path(long n) {
  if (n < 1) throw ParameterError("path needs n >= 1");
  const std::size_t order = checked_order(n, "path");
  std::vector<Edge> edges;
  for (Vertex u = 0; u + 1 < order; ++u) edges.emplace_back(u, u + 1);
  return Graph(order, edges, "path(" + std::to_string(n) + ")");
}

Graph build_petersen() {
  // Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint.
  const auto sets = subsets(5, 2);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < sets.size(); ++u)
    for (Vertex v = u + 1; v < sets.size(); ++v)
      if (intersection_size(sets[u], sets[v]) == 0) edges.emplace_back(u, v);
  return Graph(sets.size(), edges, "petersen");
}

Graph build_hamming(long d, long q) {
  if (d < 1 || q < 2) throw ParameterError("hamming(d,q) needs d >= 1 and q >= 2");
  const std::size_t order = capped_power(q, d, "hamming graph");
  const auto qs = static_cast<std::size_t>(q);
  std::vector<Edge> edges;
  // Vertex index is the base-q number of the tuple (most significant coordinate first).
  for (Vertex u = 0; u < order; ++u) {
    std::size_t place = 1;
    for (long coord = 0; coord < d; ++coord, place *= qs) {
      const std::size_t digit = (u / place) % qs;
      for (std::size_t other = digit + 1; other < qs; ++other)
        edges.emplace_back(u, u + (other - digit) * place);
    }
  }
  return Graph(order, edges, "hamming(" + std::to_string(d) + "," + std::to_string(q) + ")");
}

Graph build_hypercube(long d) {
  if (d < 1) throw ParameterError("hypercube needs d >= 1");
  Graph g = build_hamming(d, 2);
  g.set_label("hypercube(" + std::to_string(d) + ")");
  return g;
}

Graph build_johnson(long v, long m) {
  if (m < 1 || v <= m) throw ParameterError("johnson(v,m) needs 1 <= m < v");
  const auto sets = subsets(v, m);
  std::vector<Edge> edges;
  for (Vertex x = 0; x < sets.size(); ++x)
    for (Vertex y = x + 1; y < sets.size(); ++y)
      if (intersection_size(sets[x], sets[y]) + 1 == static_cast<std::size_t>(m))
        edges.emplace_back(x, y);
  return Graph(sets.size(), edges, "johnson(" + std::to_string(v) + "," + std::to_string(m) + ")");
}

Graph build_paley(long q) {
  if (!is_prime(q) || q % 4 != 1)
    throw ParameterError("paley(q) needs a prime q = 1 mod 4, got " + std::to_string(q));
  const std::size_t order = checked_order(q, "paley graph");
  std::vector<bool> residue(order, false);
  for (std::size_t x = 1; x < order; ++x) residue[(x * x) % order] = true;
  std::vector<Edge> edges;
  for (Vertex u = 0; u < order; ++u)
    for (Vertex v = u + 1; v < order; ++v)
      if (residue[v - u]) edges.emplace_back(u, v);
  return Graph(order, edges, "paley(" + std::to_string(q) + ")");
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::complete: return "complete";
    case Family::cycle: return "cycle";
    case Family::petersen: return "petersen";
    case Family::hypercube: return "hypercube";
    case Family::hamming: return "hamming";
    case Family::johnson: return "johnson";
    case Family::paley: return "paley";
  }
  return "?";
}

FamilySpec make_family(std::string_view name, std::vector<long> params) {
  struct Entry {
    Family family;
    std::size_t arity;
  };
  static constexpr std::pair<std::string_view, Entry> table[] = {
      {"complete", {Family::complete, 1}}, {"cycle", {Family::cycle, 1}},
      {"petersen", {Family::petersen, 0}}, {"hypercube", {Family::hypercube, 1}},
      {"hamming", {Family::hamming, 2}},   {"johnson", {Family::johnson, 2}},
      {"paley", {Family::paley, 1}},
  };
  for (const auto& [id, entry] : table) {
    if (id != name) continue;
    if (params.size() != entry.arity)
      throw ParameterError(std::string(name) + " takes " + std::to_string(entry.arity) +
                           " parameter(s), got " + std::to_string(params.size()));
    return FamilySpec{entry.family, std::move(params)};
  }
  throw ParameterError("unknown family '" + std::string(name) + "'");
}

std::string FamilySpec::label() const {
  std::string out(family_name(family));
  if (params.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(params[i]);
  }
  return out + ')';
}

Graph build_family(const FamilySpec& spec) {
  const auto& p = spec.params;
  switch (spec.family) {
    case Family::complete: return build_complete(p.at(0));
    case Family::cycle: return build_cycle(p.at(0));
    case Family::petersen: return build_petersen();
    case Family::hypercube: return build_hypercube(p.at(0));
    case Family::hamming: return build_hamming(p.at(0), p.at(1));
    case Family::johnson: return build_johnson(p.at(0), p.at(1));
    case Family::paley: return build_paley(p.at(0));
  }
  throw ParameterError("unknown family");
}

// ---------------------------------------------------------------------------
// Partitions

std::vector<std::size_t> Partition::cell_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& c : cells) out.push_back(c.size());
  return out;
}

std::vector<std::size_t> Partition::cell_of(std::size_t n) const {
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> out(n, unset);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].empty()) throw ParameterError("partition cell " + std::to_string(i) + " is empty");
    for (Vertex v : cells[i]) {
      if (v >= n) throw ParameterError("partition vertex " + std::to_string(v) + " out of range");
      if (out[v] != unset)
        throw ParameterError("vertex " + std::to_string(v) + " appears in two partition cells");
      out[v] = i;
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (out[v] == unset) throw ParameterError("vertex " + std::to_string(v) + " is in no cell");
  return out;
}

bool QuotientMatrix::is_tridiagonal() const {
  for (std::size_t i = 0; i < entries.rows(); ++i)
    for (std::size_t j = 0; j < entries.cols(); ++j) {
      const std::size_t offset = i > j ? i - j : j - i;
      if (offset > 1 && entries(i, j) != 0) return false;
      if (offset == 1 && entries(i, j) <= 0) return false;
    }
  return true;
}

std::vector<std::size_t> distances_from(const Graph& g, Vertex a) {
  if (a >= g.order()) throw ParameterError("vertex " + std::to_string(a) + " out of range");
  constexpr auto unreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.order(), unreached);
  std::deque<Vertex> queue{a};
  dist[a] = 0;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex v : g.neighbors(u)) {
      if (dist[v] != unreached) continue;
      dist[v] = dist[u] + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  if (g.order() == 0) return true;
  const auto dist = distances_from(g, 0);
  return std::none_of(dist.begin(), dist.end(),
                      [](std::size_t d) { return d == std::numeric_limits<std::size_t>::max(); });
}

Partition distance_partition(const Graph& g, Vertex a) {
  const auto dist = distances_from(g, a);
  Partition p;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (dist[v] == std::numeric_limits<std::size_t>::max())
      throw HypothesisError("connected", "vertex " + std::to_string(v) +
                                             " is unreachable from vertex " + std::to_string(a));
    if (dist[v] >= p.cells.size()) p.cells.resize(dist[v] + 1);
    p.cells[dist[v]].push_back(v);
  }
  return p;
}

Outcome<QuotientMatrix> check_equitable(const Graph& g, const Partition& p) {
  const auto cell = p.cell_of(g.order());
  const std::size_t m = p.size();
  QuotientMatrix q{Matrix<std::int64_t>(m, m), p};
  std::vector<std::int64_t> counts(m);
  for (std::size_t i = 0; i < m; ++i) {
    bool first = true;
    for (Vertex u : p.cells[i]) {
      std::fill(counts.begin(), counts.end(), 0);
      for (Vertex v : g.neighbors(u)) ++counts[cell[v]];
      if (first) {
        std::copy(counts.begin(), counts.end(), q.entries.row(i).begin());
        first = false;
        continue;
      }
      for (std::size_t j = 0; j < m; ++j) {
        if (counts[j] == q.entries(i, j)) continue;
        return Refusal{"equitable",
                       "vertex " + std::to_string(u) + " has " + std::to_string(counts[j]) +
                           " neighbours in cell " + std::to_string(j) + " but vertex " +
                           std::to_string(p.cells[i].front()) + " has " +
                           std::to_string(q.entries(i, j)),
                       u, j};
      }
    }
  }
  return q;
}

Outcome<IntersectionArray> intersection_array_of(const Graph& g) {
  const auto k = g.common_degree();
  if (!k) throw HypothesisError("regular", "distance regularity presupposes a regular graph");
  std::optional<Matrix<std::int64_t>> reference;
  for (Vertex a = 0; a < g.order(); ++a) {
    const Partition p = distance_partition(g, a);
    auto q = check_equitable(g, p);
    if (!q) {
      Refusal r = q.refusal();
      r.condition = "distance-regular";
      r.detail = "distance partition from vertex " + std::to_string(a) + " is not equitable (" +
                 r.detail + ")";
      r.vertex = a;
      return r;
    }
    if (!q->is_tridiagonal())
      return Refusal{"distance-regular",
                     "quotient from vertex " + std::to_string(a) + " is not tridiagonal", a, {}};
    if (!reference) {
      reference = q->entries;
    } else if (!(q->entries == *reference)) {
      return Refusal{"distance-regular",
                     "quotient from vertex " + std::to_string(a) + " differs from vertex 0", a, {}};
    }
  }
  const std::size_t d = reference->rows() - 1;
  if (d == 0) return Refusal{"distance-regular", "graph has a single vertex", 0, {}};
  std::vector<std::int64_t> b, c;
  for (std::size_t i = 0; i < d; ++i) b.push_back((*reference)(i, i + 1));
  for (std::size_t i = 1; i <= d; ++i) c.push_back((*reference)(i, i - 1));
  return IntersectionArray::validate(std::move(b), std::move(c));
}

// ---------------------------------------------------------------------------
// Deletion and connectivity

VertexDeleted vertex_deleted(const Graph& g, Vertex a) {
  if (a >= g.order()) throw ParameterError("vertex " + std::to_string(a) + " out of range");
  VertexDeleted out;
  out.removed = a;
  out.new_label.assign(g.order(), std::nullopt);
  for (Vertex v = 0; v < g.order(); ++v) {
    if (v == a) continue;
    out.new_label[v] = out.old_label.size();
    out.old_label.push_back(v);
  }
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (u != a && v != a) edges.emplace_back(*out.new_label[u], *out.new_label[v]);
  out.graph = Graph(g.order() - 1, edges, g.label().empty() ? "" : g.label() + "\\" + std::to_string(a));
  return out;
}

RealMatrix laplacian_minor(const Graph& g, Vertex a) {
  const auto k = g.common_degree();
  if (!k) throw HypothesisError("regular", "Laplacian minor kI - A(X\\a) needs a regular graph");
  const VertexDeleted del = vertex_deleted(g, a);
  RealMatrix m = del.graph.adjacency_matrix();
  for (auto& x : m.data()) x = -x;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) = static_cast<double>(*k);
  return m;
}

bool is_two_connected(const Graph& g) {
  if (g.order() < 3) throw ParameterError("is_two_connected needs n >= 3");
  if (!is_connected(g)) return false;
  for (Vertex a = 0; a < g.order(); ++a)
    if (!is_connected(vertex_deleted(g, a).graph)) return false;
  return true;
}

}  // namespace dtqw
