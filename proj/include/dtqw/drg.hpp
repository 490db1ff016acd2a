#pragma once

// Intersection-array analytics: tridiagonal quotients, orthogonal and dual
// orthogonal polynomials, the eigenvalue/eigenvector bounds that drive the
// 1/4 limit, and family sweeps.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dtqw/graph.hpp"
#include "dtqw/linalg.hpp"

namespace dtqw {

/// Integer tridiagonal matrix: diagonal alpha_0..alpha_m, superdiagonal
/// beta_0..beta_{m-1} and subdiagonal gamma_1..gamma_m, all off-diagonals positive.
class Tridiagonal {
 public:
  Tridiagonal(std::vector<std::int64_t> diagonal, std::vector<std::int64_t> upper,
              std::vector<std::int64_t> lower);

  std::size_t size() const noexcept { return diag_.size(); }
  std::int64_t alpha(std::size_t i) const { return diag_.at(i); }
  std::int64_t beta(std::size_t i) const { return upper_.at(i); }
  /// gamma_i for i = 1..m
  std::int64_t gamma(std::size_t i) const { return lower_.at(i - 1); }

  Tridiagonal leading(std::size_t m) const;
  RealMatrix dense() const;
  /// Similar symmetric matrix with off-diagonals sqrt(beta_i gamma_{i+1}).
  RealMatrix symmetrized() const;

 private:
  std::vector<std::int64_t> diag_, upper_, lower_;
};

Tridiagonal quotient_B(const IntersectionArray& arr);
Tridiagonal quotient_S(const IntersectionArray& arr);
RealMatrix quotient_Shat(const IntersectionArray& arr);

/// Integer polynomial, ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<std::int64_t> coefficients);

  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  std::span<const std::int64_t> coefficients() const noexcept { return coeffs_; }
  double operator()(double x) const;
  /// Exact evaluation; throws NumericalError on int64 overflow.
  std::int64_t exact(std::int64_t x) const;
  /// sum |c_j| |x|^j, the size of the terms cancelling in p(x).
  double magnitude(double x) const;
  std::string to_string() const;
  bool operator==(const Polynomial&) const = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

/// p_0 .. p_{m+1} for an (m+1)x(m+1) tridiagonal: p_i = det(xI - T_i).
struct PolySeq {
  std::vector<Polynomial> polys;
  Tridiagonal source;

  std::size_t size() const noexcept { return polys.size(); }
  const Polynomial& operator[](std::size_t i) const { return polys.at(i); }
};

PolySeq orthopoly(const Tridiagonal& t);

/// Roots of p_i in ascending order by bisection on the brackets given by
/// the roots of p_{i-1} (tolerance 1e-12 relative to the Gershgorin radius).
std::vector<double> polynomial_roots(const PolySeq& seq, std::size_t i);

struct InterlacingReport {
  bool ok = true;
  std::string detail;
};
/// Strict interlacing of consecutive root sets (roots taken from the
/// symmetrized leading blocks) and sign alternation of p_i at the roots of p_{i+1}.
InterlacingReport check_interlacing(const PolySeq& seq);

/// Eigenvector of the leading m x m block T_m for a root lambda of p_m:
/// (p_0, p_1/beta_0, ..., p_{m-1}/(beta_0...beta_{m-2})) at lambda.
/// Throws ParameterError if |p_m(lambda)| >= 1e-8 * magnitude.
std::vector<double> eigvec_from_polys(const PolySeq& seq, std::size_t m, double lambda);

/// Largest root of q_d (largest eigenvalue of X\a). Bisection for d <= 3,
/// cross-checked against the symmetrized block; sym_eig for d >= 4.
double largest_root_qd(const IntersectionArray& arr);

/// q_i(x) / (c_d c_{d-1} ... c_{d-i+1})
double normalized_dual(const IntersectionArray& arr, const PolySeq& dual, std::size_t i, double x);

struct BoundCheck {
  std::string name;
  double bound = 0.0;
  std::optional<double> actual;  // lower bound: actual >= bound

  std::optional<double> slack() const {
    return actual ? std::optional<double>(*actual - bound) : std::nullopt;
  }
  bool holds(double tol = 1e-9) const { return !actual || *actual >= bound - tol; }
};

/// ((n-1)/n) (q_{d-1}(lambda)/q_{d-1}(k))^2
double bound_evE1(const IntersectionArray& arr, double lambda);
/// k - 2k/n
double bound_lambda(const IntersectionArray& arr);


/// Bounds evaluated against a concrete graph; the array must be its intersection array.
BoundCheck check_bound_evE1(const Graph& g, Vertex a, const IntersectionArray& arr);
BoundCheck check_bound_lambda(const Graph& g, Vertex a, const IntersectionArray& arr);

/// Cellwise values z_1..z_d of (L(X)\a)^{-1} 1.
std::vector<double> laplacian_minor_solution(const IntersectionArray& arr);

struct LaplacianCheck {
  std::vector<double> cellwise;   // z_1..z_d
  std::vector<double> direct;     // direct solve, indexed by X\a labels
  double max_deviation = 0.0;
  bool strictly_increasing = false;
};
LaplacianCheck check_laplacian_minor(const Graph& g, Vertex a, const IntersectionArray& arr);

struct S1Bound {
  double sum_squares = 0.0;  // sum_lambda (e_v^T E_lambda 1)^2
  BoundCheck check;          // bound (1/4)((n-1)/n) sum_squares, actual s1
};
/// Throws HypothesisError if the closed form refuses the graph.
S1Bound s1_lower_bound(const Graph& g, Vertex a);

/// Closed expression for sum_lambda (E_lambda J E_lambda)_vv on strongly regular graphs,
/// ((k-a1+c2)^2-4c2)/((k-a1+c2)^2-4c2-2(k-a1-1)); reported for comparison only.
double srg_formula_sum(const IntersectionArray& arr);

struct LimitCriterion {
  double with_c_product = 0.0;  // k^{d-1} / (c_2...c_d n)
  double plain = 0.0;           // k^{d-1} / n
};
LimitCriterion limit_criterion(const IntersectionArray& arr);

/// Values on the reversed distance cells lifted to X\a: a vertex at distance i
/// from a receives y[d - i].
std::vector<double> lift_reversed_cells(const Graph& g, Vertex a, std::span<const double> y);

struct SweepRow {
  std::string param;
  bool skipped = false;
  std::string note;
  std::size_t n = 0;
  std::size_t k = 0;
  std::string array;
  double total = 0.0;
  double deviation = 0.0;  // |total - 1/4|
  LimitCriterion criterion;
};

struct SweepTable {
  std::string family;
  std::vector<SweepRow> rows;
  bool strictly_decreasing = false;  // deviation decreases at every step
  bool overall_decreasing = false;   // last deviation below the first
};

SweepTable family_sweep(std::string_view family, const std::vector<std::vector<long>>& params);

}  // namespace dtqw
