#include "dtqw/drg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dtqw/eigen.hpp"
#include "dtqw/spectral.hpp"

namespace dtqw {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw NumericalError("integer overflow in polynomial arithmetic");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw NumericalError("integer overflow in polynomial arithmetic");
  return out;
}

double largest_eigenvalue(const RealMatrix& m) { return sym_eig(m).eigenspaces.back().value; }

}  // namespace

// ---------------------------------------------------------------------------
// Tridiagonal

Tridiagonal::Tridiagonal(std::vector<std::int64_t> diagonal, std::vector<std::int64_t> upper,
                         std::vector<std::int64_t> lower)
    : diag_(std::move(diagonal)), upper_(std::move(upper)), lower_(std::move(lower)) {
  if (diag_.empty()) throw ParameterError("tridiagonal matrix must be at least 1x1");
  if (upper_.size() + 1 != diag_.size() || lower_.size() + 1 != diag_.size())
    throw ParameterError("tridiagonal: off-diagonals must have one entry fewer than the diagonal");
  for (auto x : upper_)
    if (x <= 0) throw ParameterError("tridiagonal: superdiagonal entries must be positive");
  for (auto x : lower_)
    if (x <= 0) throw ParameterError("tridiagonal: subdiagonal entries must be positive");
}

Tridiagonal Tridiagonal::leading(std::size_t m) const {
  if (m == 0 || m > size()) throw ParameterError("tridiagonal: leading block size out of range");
  return Tridiagonal({diag_.begin(), diag_.begin() + static_cast<std::ptrdiff_t>(m)},
                     {upper_.begin(), upper_.begin() + static_cast<std::ptrdiff_t>(m - 1)},
                     {lower_.begin(), lower_.begin() + static_cast<std::ptrdiff_t>(m - 1)});
}

RealMatrix Tridiagonal::dense() const {
  RealMatrix out(size(), size());
  for (std::size_t i = 0; i < size(); ++i) {
    out(i, i) = static_cast<double>(diag_[i]);
    if (i + 1 < size()) {
      out(i, i + 1) = static_cast<double>(upper_[i]);
      out(i + 1, i) = static_cast<double>(lower_[i]);
    }
  }
  return out;
}

RealMatrix Tridiagonal::symmetrized() const {
  RealMatrix out(size(), size());
  for (std::size_t i = 0; i < size(); ++i) {
    out(i, i) = static_cast<double>(diag_[i]);
    if (i + 1 < size()) {
      const double off = std::sqrt(static_cast<double>(upper_[i]) * static_cast<double>(lower_[i]));
      out(i, i + 1) = out(i + 1, i) = off;
    }
  }
  return out;
}

Tridiagonal quotient_B(const IntersectionArray& arr) {
  const std::size_t d = arr.diameter();
  std::vector<std::int64_t> diag, upper, lower;
  for (std::size_t i = 0; i <= d; ++i) diag.push_back(arr.a(i));
  for (std::size_t i = 0; i < d; ++i) upper.push_back(arr.b(i));
  for (std::size_t i = 1; i <= d; ++i) lower.push_back(arr.c(i));
  return Tridiagonal(std::move(diag), std::move(upper), std::move(lower));
}

Tridiagonal quotient_S(const IntersectionArray& arr) {
  const std::size_t d = arr.diameter();
  std::vector<std::int64_t> diag, upper, lower;
  for (std::size_t i = 0; i <= d; ++i) diag.push_back(arr.a(d - i));
  for (std::size_t i = 0; i < d; ++i) upper.push_back(arr.c(d - i));
  for (std::size_t i = 0; i < d; ++i) lower.push_back(arr.b(d - 1 - i));
  return Tridiagonal(std::move(diag), std::move(upper), std::move(lower));
}

RealMatrix quotient_Shat(const IntersectionArray& arr) {
  const std::size_t d = arr.diameter();
  RealMatrix out(d + 1, d + 1);
  for (std::size_t j = 0; j <= d; ++j) out(j, j) = static_cast<double>(arr.a(d - j));
  for (std::size_t j = 0; j < d; ++j) {
    const double off = std::sqrt(static_cast<double>(arr.b(d - 1 - j)) * static_cast<double>(arr.c(d - j)));
    out(j, j + 1) = out(j + 1, j) = off;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials

Polynomial::Polynomial(std::vector<std::int64_t> coefficients) : coeffs_(std::move(coefficients)) {
  while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
}

double Polynomial::operator()(double x) const {
  long double acc = 0.0L;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * static_cast<long double>(x) + static_cast<long double>(*it);
  return static_cast<double>(acc);
}

std::int64_t Polynomial::exact(std::int64_t x) const {
  std::int64_t acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = checked_add(checked_mul(acc, x), *it);
  return acc;
}

double Polynomial::magnitude(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * std::abs(x) + std::abs(static_cast<double>(*it));
  return acc;
}

std::string Polynomial::to_string() const {
  std::string out;
  for (std::size_t j = coeffs_.size(); j-- > 0;) {
    const std::int64_t c = coeffs_[j];
    if (c == 0 && coeffs_.size() > 1) continue;
    const std::int64_t mag = c < 0 ? -c : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1 || j == 0) out += std::to_string(mag);
    if (j >= 1) out += "x";
    if (j >= 2) out += "^" + std::to_string(j);
  }
  return out.empty() ? "0" : out;
}

PolySeq orthopoly(const Tridiagonal& t) {
  std::vector<Polynomial> polys;
  polys.emplace_back(std::vector<std::int64_t>{1});
  polys.emplace_back(std::vector<std::int64_t>{-t.alpha(0), 1});
  // p_{i+1} = (x - alpha_i) p_i - beta_{i-1} gamma_i p_{i-1}
  for (std::size_t i = 1; i < t.size(); ++i) {
    const auto& p = polys[i].coefficients();
    const auto& prev = polys[i - 1].coefficients();
    const std::int64_t coupling = checked_mul(t.beta(i - 1), t.gamma(i));
    std::vector<std::int64_t> next(p.size() + 1, 0);
    for (std::size_t j = 0; j < p.size(); ++j) {
      next[j + 1] = checked_add(next[j + 1], p[j]);
      next[j] = checked_add(next[j], -checked_mul(t.alpha(i), p[j]));
    }
    for (std::size_t j = 0; j < prev.size(); ++j) next[j] = checked_add(next[j], -checked_mul(coupling, prev[j]));
    polys.emplace_back(std::move(next));
  }
  return PolySeq{std::move(polys), t};
}

namespace {

double gershgorin_radius(const Tridiagonal& t) {
  double r = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double row = std::abs(static_cast<double>(t.alpha(i)));
    if (i > 0) row += static_cast<double>(t.gamma(i));
    if (i + 1 < t.size()) row += static_cast<double>(t.beta(i));
    r = std::max(r, row);
  }
  return r + 1.0;
}

double bisect(const Polynomial& p, double lo, double hi, double tol) {
  double flo = p(lo);
  if (flo == 0.0) return lo;
  if (p(hi) == 0.0) return hi;
  for (int iter = 0; iter < 400 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = p(mid);
    if (fmid == 0.0) return mid;
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> polynomial_roots(const PolySeq& seq, std::size_t i) {
  if (i >= seq.size()) throw ParameterError("polynomial_roots: index out of range");
  const double radius = gershgorin_radius(seq.source);
  const double tol = 1e-12 * std::max(1.0, radius);
  std::vector<double> roots;  // roots of p_0: none
  for (std::size_t level = 1; level <= i; ++level) {
    std::vector<double> brackets{-radius};
    brackets.insert(brackets.end(), roots.begin(), roots.end());
    brackets.push_back(radius);
    std::vector<double> next;
    for (std::size_t j = 0; j + 1 < brackets.size(); ++j)
      next.push_back(bisect(seq[level], brackets[j], brackets[j + 1], tol));
    roots = std::move(next);
  }
  return roots;
}

InterlacingReport check_interlacing(const PolySeq& seq) {
  InterlacingReport report;
  const std::size_t m = seq.source.size();
  std::vector<double> inner;  // roots of p_i
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t level = i + 1;
    std::vector<double> outer;
    for (const auto& es : sym_eig(seq.source.leading(level).symmetrized()).eigenspaces) {
      if (es.multiplicity != 1) {
        report.ok = false;
        report.detail = "p_" + std::to_string(level) + " has a repeated root near " + std::to_string(es.value);
        return report;
      }
      outer.push_back(es.value);
    }
    for (std::size_t j = 0; j < inner.size(); ++j) {
      if (!(outer[j] < inner[j] && inner[j] < outer[j + 1])) {
        report.ok = false;
        report.detail = "roots of p_" + std::to_string(i) + " do not interlace those of p_" + std::to_string(level);
        return report;
      }
    }
    for (std::size_t j = 0; j + 1 < outer.size(); ++j) {
      const double lhs = seq[i](outer[j]);
      const double rhs = seq[i](outer[j + 1]);
      if (!((lhs < 0.0) != (rhs < 0.0)) || lhs == 0.0 || rhs == 0.0) {
        report.ok = false;
        report.detail = "p_" + std::to_string(i) + " does not alternate in sign at the roots of p_" +
                        std::to_string(level);
        return report;
      }
    }
    inner = std::move(outer);
  }
  return report;
}

std::vector<double> eigvec_from_polys(const PolySeq& seq, std::size_t m, double lambda) {
  if (m == 0 || m >= seq.size()) throw ParameterError("eigvec_from_polys: block size out of range");
  const double residual = std::abs(seq[m](lambda));
  if (residual >= 1e-8 * std::max(1.0, seq[m].magnitude(lambda)))
    throw ParameterError("eigvec_from_polys: " + std::to_string(lambda) + " is not a root of p_" +
                         std::to_string(m));
  std::vector<double> z(m);
  double scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (i > 0) scale *= static_cast<double>(seq.source.beta(i - 1));
    z[i] = seq[i](lambda) / scale;
  }
  return z;
}

double largest_root_qd(const IntersectionArray& arr) {
  const std::size_t d = arr.diameter();
  const Tridiagonal s = quotient_S(arr);
  const double by_eig = largest_eigenvalue(s.leading(d).symmetrized());
  if (d >= 4) return by_eig;
  const PolySeq dual = orthopoly(s);
  const double by_poly = polynomial_roots(dual, d).back();
  if (std::abs(by_poly - by_eig) > 1e-9 * std::max(1.0, static_cast<double>(arr.valency())))
    throw NumericalError("largest root of q_d disagrees between bisection (" + std::to_string(by_poly) +
                         ") and the symmetrized block (" + std::to_string(by_eig) + ")");
  return by_poly;
}

double normalized_dual(const IntersectionArray& arr, const PolySeq& dual, std::size_t i, double x) {
  const std::size_t d = arr.diameter();
  double denominator = 1.0;  // empty product for i = 0
  for (std::size_t j = 0; j < i; ++j) denominator *= static_cast<double>(arr.c(d - j));
  return dual[i](x) / denominator;
}

// ---------------------------------------------------------------------------
// Bounds

double bound_evE1(const IntersectionArray& arr, double lambda) {
  const std::size_t d = arr.diameter();
  const PolySeq dual = orthopoly(quotient_S(arr));
  const double n = static_cast<double>(arr.order());
  // q_{d-1}(k) is exact; for d = 1 it is q_0 = 1.
  const double at_k = static_cast<double>(dual[d - 1].exact(arr.valency()));
  const double ratio = dual[d - 1](lambda) / at_k;
  return (n - 1.0) / n * ratio * ratio;
}

double bound_lambda(const IntersectionArray& arr) {
  const double k = static_cast<double>(arr.valency());
  return k - 2.0 * k / static_cast<double>(arr.order());
}

namespace {

struct LargestEigenspace {
  double lambda;
  double ev_e1;
};

LargestEigenspace largest_of_deleted(const Graph& g, Vertex a) {
  const VertexDeleted del = vertex_deleted(g, a);
  const RealSpectrum spec = sym_eig(del.graph.adjacency_matrix());
  const auto& top = spec.eigenspaces.back();
  const std::size_t v = *del.new_label[g.neighbors(a).front()];
  double row = 0.0;
  for (double x : top.projection.row(v)) row += x;
  return {top.value, row};
}

void require_array_matches(const Graph& g, const IntersectionArray& arr) {
  if (g.order() != static_cast<std::size_t>(arr.order()) ||
      g.common_degree() != std::optional<std::size_t>(static_cast<std::size_t>(arr.valency())))
    throw ParameterError("intersection array " + arr.to_string() + " does not match the graph");
}

}  // namespace

BoundCheck check_bound_evE1(const Graph& g, Vertex a, const IntersectionArray& arr) {
  require_array_matches(g, arr);
  const double lambda = largest_root_qd(arr);
  const LargestEigenspace top = largest_of_deleted(g, a);
  if (std::abs(top.lambda - lambda) > 1e-7)
    throw NumericalError("largest root of q_d (" + std::to_string(lambda) +
                         ") differs from the largest eigenvalue of X\\a (" + std::to_string(top.lambda) + ")");
  return BoundCheck{"evE1", bound_evE1(arr, lambda), top.ev_e1};
}

BoundCheck check_bound_lambda(const Graph& g, Vertex a, const IntersectionArray& arr) {
  require_array_matches(g, arr);
  return BoundCheck{"lambda_max", bound_lambda(arr), largest_of_deleted(g, a).lambda};
}

std::vector<double> laplacian_minor_solution(const IntersectionArray& arr) {
  const std::size_t d = arr.diameter();
  const double n = static_cast<double>(arr.order());
  const double k = static_cast<double>(arr.valency());
  std::vector<double> z{(n - 1.0) / k};  // d = 1: the single cell value
  for (std::size_t i = 1; i < d; ++i) {
    double tail = 0.0;
    for (std::size_t j = i + 1; j <= d; ++j) tail += static_cast<double>(arr.k(j));
    z.push_back(z.back() + tail / (static_cast<double>(arr.k(i)) * static_cast<double>(arr.b(i))));
  }
  return z;
}

LaplacianCheck check_laplacian_minor(const Graph& g, Vertex a, const IntersectionArray& arr) {
  require_array_matches(g, arr);
  LaplacianCheck out;
  out.cellwise = laplacian_minor_solution(arr);
  const RealMatrix minor = laplacian_minor(g, a);
  const std::vector<double> ones(minor.rows(), 1.0);
  out.direct = cholesky_solve(minor, ones);
  const auto dist = distances_from(g, a);
  const VertexDeleted del = vertex_deleted(g, a);
  for (std::size_t i = 0; i < out.direct.size(); ++i) {
    const std::size_t cell = dist[del.old_label[i]];
    out.max_deviation = std::max(out.max_deviation, std::abs(out.direct[i] - out.cellwise.at(cell - 1)));
  }
  out.strictly_increasing =
      std::adjacent_find(out.cellwise.begin(), out.cellwise.end(), std::greater_equal<>()) == out.cellwise.end();
  return out;
}

S1Bound s1_lower_bound(const Graph& g, Vertex a) {
  const auto report = closed_form_average(g, a);
  if (!report) throw HypothesisError(report.refusal().condition, report.refusal().detail);
  S1Bound out;
  for (const auto& row : report->rows) out.sum_squares += row.ev_e1 * row.ev_e1;
  const double n = static_cast<double>(g.order());
  out.check = BoundCheck{"s1", 0.25 * (n - 1.0) / n * out.sum_squares, report->s1};
  return out;
}

double srg_formula_sum(const IntersectionArray& arr) {
  if (arr.diameter() != 2) throw ParameterError("strongly-regular expression needs diameter 2");
  const double k = static_cast<double>(arr.valency());
  const double a1 = static_cast<double>(arr.a(1));
  const double c2 = static_cast<double>(arr.c(2));
  const double s = (k - a1 + c2) * (k - a1 + c2) - 4.0 * c2;
  return s / (s - 2.0 * (k - a1 - 1.0));
}

LimitCriterion limit_criterion(const IntersectionArray& arr) {
  const std::size_t d = arr.diameter();
  const long double k = static_cast<long double>(arr.valency());
  const long double n = static_cast<long double>(arr.order());
  long double power = 1.0L;
  for (std::size_t i = 1; i < d; ++i) power *= k;
  long double c_product = 1.0L;  // empty for d = 1
  for (std::size_t i = 2; i <= d; ++i) c_product *= static_cast<long double>(arr.c(i));
  return {static_cast<double>(power / (c_product * n)), static_cast<double>(power / n)};
}

std::vector<double> lift_reversed_cells(const Graph& g, Vertex a, std::span<const double> y) {
  const auto dist = distances_from(g, a);
  const std::size_t d = y.size();
  const VertexDeleted del = vertex_deleted(g, a);
  std::vector<double> out(del.old_label.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t cell = dist[del.old_label[i]];
    if (cell == 0 || cell > d) throw ParameterError("lift_reversed_cells: cell vector too short");
    out[i] = y[d - cell];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps

SweepTable family_sweep(std::string_view family, const std::vector<std::vector<long>>& params) {
  SweepTable table;
  table.family = std::string(family);
  for (const auto& p : params) {
    const FamilySpec spec = make_family(family, p);
    SweepRow row;
    for (std::size_t i = 0; i < p.size(); ++i) row.param += (i ? ":" : "") + std::to_string(p[i]);
    Graph g;
    try {
      g = build_family(spec);
    } catch (const SizeCapError& e) {
      row.skipped = true;
      row.note = e.what();
      table.rows.push_back(row);
      continue;
    }
    row.n = g.order();
    row.k = g.common_degree().value_or(0);
    const auto arr = intersection_array_of(g);
    if (!arr) throw HypothesisError("distance-regular", spec.label() + ": " + arr.refusal().detail);
    row.array = arr->to_string();
    const auto report = closed_form_average(g, 0);
    if (!report) throw HypothesisError(report.refusal().condition, spec.label() + ": " + report.refusal().detail);
    row.total = report->total;
    row.deviation = std::abs(report->total - 0.25);
    row.criterion = limit_criterion(*arr);
    table.rows.push_back(row);
  }
  std::vector<double> dev;
  for (const auto& r : table.rows)
    if (!r.skipped) dev.push_back(r.deviation);
  if (dev.size() >= 2) {
    table.strictly_decreasing = true;
    for (std::size_t i = 1; i < dev.size(); ++i)
      if (!(dev[i] < dev[i - 1])) table.strictly_decreasing = false;
    table.overall_decreasing = dev.back() < dev.front();
  }
  return table;
}

}  // namespace dtqw
