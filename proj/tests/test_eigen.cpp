#include <doctest.h>

#include <random>

#include "dtqw/eigen.hpp"
#include "dtqw/graph.hpp"
#include "oracles.hpp"

using namespace dtqw;

namespace {

RealMatrix random_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = dist(rng);
  return m;
}

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = dist(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = Complex(dist(rng), dist(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

template <class S>
std::vector<double> expanded_values(const SpectralDecomposition<S>& d) {
  std::vector<double> out;
  for (const auto& es : d.eigenspaces) out.insert(out.end(), es.multiplicity, es.value);
  return out;
}

}  // namespace

TEST_CASE("sym_eig agrees with an independent symmetric solver") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 2u, 3u, 7u, 16u, 33u}) {
    const RealMatrix m = random_symmetric(n, rng);
    const RealSpectrum d = sym_eig(m);
    const auto ours = expanded_values(d);
    const auto ref = oracle::sym_eigenvalues(oracle::to_eigen(m));
    REQUIRE(ours.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(ours[i] == doctest::Approx(ref[i]).epsilon(1e-10));
    const auto defects = check_decomposition(d);
    CHECK(defects.idempotence < 1e-10);
    CHECK(defects.orthogonality < 1e-10);
    CHECK(defects.completeness < 1e-10);
    CHECK(defects.reconstruction < 1e-10);
  }
}

TEST_CASE("jacobi eigenvectors") {
  std::mt19937_64 rng(5);
  const RealMatrix m = random_symmetric(12, rng);
  const JacobiResult r = jacobi_diagonalize(m);
  for (std::size_t i = 0; i < 12; ++i) {
    const auto v = r.vectors.row(i);
    const auto mv = m * v;
    for (std::size_t j = 0; j < 12; ++j) CHECK(mv[j] == doctest::Approx(r.values[i] * v[j]).epsilon(1e-9).scale(1.0));
  }
  CHECK(r.sweeps > 0);
}

TEST_CASE("petersen spectrum against its characteristic polynomial") {
  const Graph g = build_petersen();
  std::vector<std::vector<std::int64_t>> a(10, std::vector<std::int64_t>(10, 0));
  for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = 1;
  // (x - 3)(x - 1)^5 (x + 2)^4
  CHECK(oracle::characteristic_polynomial(a) == oracle::from_roots({3, 1, 1, 1, 1, 1, -2, -2, -2, -2}));

  const RealSpectrum d = sym_eig(g.adjacency_matrix());
  REQUIRE(d.size() == 3);
  CHECK(d[0].value == doctest::Approx(-2));
  CHECK(d[0].multiplicity == 4);
  CHECK(d[1].value == doctest::Approx(1));
  CHECK(d[1].multiplicity == 5);
  CHECK(d[2].value == doctest::Approx(3));
  CHECK(d[2].multiplicity == 1);
  CHECK(d.find(1.0 + 1e-10, 1e-8) == std::optional<std::size_t>(1));
  CHECK_FALSE(d.find(0.0, 1e-8).has_value());
  // the top projection is J/n
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) CHECK(d[2].projection(i, j) == doctest::Approx(0.1));
}

TEST_CASE("projections from the minimal polynomial") {
  for (const Graph& g : {build_petersen(), build_cycle(6), build_hamming(2, 3)}) {
    const RealSpectrum d = sym_eig(g.adjacency_matrix());
    for (std::size_t r = 0; r < d.size(); ++r)
      CHECK(max_abs_diff(projection_via_polynomial(d, r), d[r].projection) < 1e-9);
  }
}

TEST_CASE("herm_eig agrees with an independent Hermitian solver") {
  std::mt19937_64 rng(13);
  for (std::size_t n : {1u, 2u, 5u, 12u, 20u}) {
    const ComplexMatrix m = random_hermitian(n, rng);
    const HermitianSpectrum d = herm_eig(m);
    Eigen::SelfAdjointEigenSolver<oracle::MatrixXcd> es(oracle::to_eigen(m));
    const auto ours = expanded_values(d);
    REQUIRE(ours.size() == n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(ours[i] == doctest::Approx(es.eigenvalues()(static_cast<Eigen::Index>(i))).epsilon(1e-10));
    const auto defects = check_decomposition(d);
    CHECK(defects.idempotence < 1e-10);
    CHECK(defects.hermiticity < 1e-10);
    CHECK(defects.orthogonality < 1e-10);
    CHECK(defects.completeness < 1e-10);
    CHECK(defects.reconstruction < 1e-10);
  }
}

TEST_CASE("herm_eig groups a degenerate spectrum") {
  // i(P - P^T) for the 6-cycle shift P
  const std::size_t n = 6;
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, (i + 1) % n) = Complex(0, 1);
    m((i + 1) % n, i) = Complex(0, -1);
  }
  const HermitianSpectrum d = herm_eig(m);
  // eigenvalues -2 sin(2 pi j / 6): {0, -sqrt3, -sqrt3, 0, sqrt3, sqrt3}
  REQUIRE(d.size() == 3);
  CHECK(d[0].multiplicity == 2);
  CHECK(d[1].multiplicity == 2);
  CHECK(d[2].multiplicity == 2);
  CHECK(d[2].value == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("invalid input") {
  RealMatrix m(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(sym_eig(m), ParameterError);
  CHECK_THROWS_AS(sym_eig(RealMatrix(2, 3)), ParameterError);
  ComplexMatrix h(2, 2);
  h(0, 1) = Complex(0, 1);
  h(1, 0) = Complex(0, 1);
  CHECK_THROWS_AS(herm_eig(h), ParameterError);
}
