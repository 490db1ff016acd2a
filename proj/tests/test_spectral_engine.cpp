#include <doctest.h>

#include <numbers>

#include "dtqw/spectral.hpp"
#include "oracles.hpp"

using namespace dtqw;

namespace {

std::vector<Graph> test_drgs() {
  return {build_complete(3), build_complete(5), build_cycle(6),     build_petersen(),
          build_hamming(2, 3), build_johnson(5, 2), build_hypercube(3), build_paley(13)};
}

// Two copies of K5 minus an edge, with a new vertex joined to the four
// vertices that lost a neighbour: 4-regular, connected, with a cut vertex.
Graph four_regular_with_cut_vertex() {
  std::vector<Edge> edges;
  for (Vertex base : {Vertex{0}, Vertex{5}})
    for (Vertex u = 0; u < 5; ++u)
      for (Vertex v = u + 1; v < 5; ++v)
        if (!(u == 0 && v == 1)) edges.emplace_back(base + u, base + v);
  for (Vertex v : {0, 1, 5, 6}) edges.emplace_back(v, 10);
  return Graph(11, edges, "cut");
}

Graph triangular_prism() {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}};
  return Graph(6, edges, "prism");
}

double kn_total(double n) { return ((n - 1) * (n - 1) * (n - 1) + (n - 2) * (n - 2)) / (n * (2 * n - 3) * (2 * n - 3)); }

}  // namespace

TEST_CASE("vandermonde block") {
  for (std::size_t k : {2u, 3u, 6u}) {
    const ComplexMatrix K = vandermonde_block(k);
    CHECK(K.rows() == k);
    CHECK(K.cols() == k - 1);
    const ComplexMatrix gram = adjoint(K) * K;
    CHECK(max_abs_diff(gram, scaled(ComplexMatrix::identity(k - 1), Complex(static_cast<double>(k)))) < 1e-12);
    for (std::size_t m = 0; m + 1 < k; ++m) {
      Complex col_sum = 0.0;
      for (std::size_t j = 0; j < k; ++j) col_sum += K(j, m);
      CHECK(std::abs(col_sum) < 1e-12);
    }
  }
}

TEST_CASE("augmented matrix structure") {
  for (const Graph& g : test_drgs()) {
    CAPTURE(g.label());
    const std::size_t k = *g.common_degree();
    const AugmentedMatrix aug = build_augmented(g, 0);
    CHECK(aug.dimension() == g.order() + k - 2);
    CHECK(hermitian_defect(aug.entries) < 1e-14);
    const ArcSpace arcs(g);
    const ComplexMatrix N = arc_embedding(aug, arcs);
    CHECK(N.rows() == arcs.size());
    // N* N = k I
    CHECK(max_abs_diff(adjoint(N) * N, scaled(ComplexMatrix::identity(aug.dimension()), Complex(double(k)))) <
          1e-12);
    // N* R N reproduces the augmented matrix
    if (arcs.size() <= kMaterializeCap) {
      const ComplexMatrix R = to_complex(materialize(WalkOperators(arcs, 0)).R);
      CHECK(max_abs_diff(adjoint(N) * R * N, aug.entries) < 1e-12);
    }
    // the lower-right block is A(X\a)
    const RealMatrix A = aug.deleted.graph.adjacency_matrix();
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t j = 0; j < A.cols(); ++j)
        CHECK(aug.entries(aug.clone_count + i, aug.clone_count + j) == Complex(A(i, j)));
  }
  CHECK_THROWS_AS(build_augmented(build_path(4), 0), HypothesisError);
  CHECK_THROWS_AS(build_augmented(build_complete(4), 4), ParameterError);
}

TEST_CASE("augmented powers act on the deleted graph") {
  for (const Graph& g : test_drgs()) {
    CAPTURE(g.label());
    const double k = static_cast<double>(*g.common_degree());
    const AugmentedMatrix aug = build_augmented(g, 0);
    const std::size_t nd = aug.deleted.graph.order();
    const RealMatrix A = aug.deleted.graph.adjacency_matrix();
    std::vector<Complex> x(aug.dimension(), 0.0);
    for (std::size_t i = 0; i < nd; ++i) x[aug.clone_count + i] = 1.0;
    std::vector<double> y(nd, 1.0);
    double scale = 1.0;
    for (int m = 1; m <= 6; ++m) {
      x = aug.entries * x;
      y = A * y;
      scale *= k;
      for (std::size_t c = 0; c < aug.clone_count; ++c) CHECK(std::abs(x[c]) <= 1e-8 * scale);
      for (std::size_t i = 0; i < nd; ++i) CHECK(std::abs(x[aug.clone_count + i] - y[i]) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("eigenphases match the spectrum of U") {
  for (const Graph& g : {build_complete(3), build_cycle(6), build_petersen(), build_complete(4)}) {
    CAPTURE(g.label());
    const double k = static_cast<double>(*g.common_degree());
    const EigenphaseSet phases = walk_eigenphases(g, 0);
    for (const auto& ph : phases.interior) {
      CHECK(ph.theta > 0.0);
      CHECK(ph.theta < std::numbers::pi);
      CHECK(k * std::cos(ph.theta) == doctest::Approx(ph.lambda).epsilon(1e-12));
    }
    const oracle::DenseWalk w = oracle::walk_matrices(g, 0);
    Eigen::ComplexEigenSolver<oracle::MatrixXcd> es(w.U.cast<Complex>());
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const Complex z = es.eigenvalues()(i);
      if (std::abs(z.imag()) < 1e-9) continue;
      const double lambda = k * std::cos(std::abs(std::arg(z)));
      bool found = false;
      for (const auto& ph : phases.interior) found = found || std::abs(ph.lambda - lambda) < 1e-7;
      CHECK(found);
    }
    for (const auto& ph : phases.interior) {
      bool found = false;
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        found = found || std::abs(es.eigenvalues()(i) - std::polar(1.0, ph.theta)) < 1e-7;
      CHECK(found);
    }
  }
}

TEST_CASE("eigenprojections of U rebuilt from the augmented spectrum") {
  for (const Graph& g : {build_complete(3), build_cycle(6), build_petersen()}) {
    CAPTURE(g.label());
    const EigenphaseSet phases = walk_eigenphases(g, 0);
    const oracle::MatrixXcd U = oracle::walk_matrices(g, 0).U.cast<Complex>();
    std::vector<std::pair<Complex, oracle::MatrixXcd>> family;
    for (const auto& ph : phases.interior) {
      const auto& proj = phases.spectrum[ph.eigenspace].projection;
      const oracle::MatrixXcd F = oracle::to_eigen(reconstruct_F(g, 0, ph.lambda, proj, +1));
      const oracle::MatrixXcd Fm = oracle::to_eigen(reconstruct_F(g, 0, ph.lambda, proj, -1));
      const Complex e = std::polar(1.0, ph.theta);
      CHECK((U * F - e * F).cwiseAbs().maxCoeff() < 1e-8);
      CHECK((F * F - F).cwiseAbs().maxCoeff() < 1e-8);
      CHECK((F - F.adjoint()).cwiseAbs().maxCoeff() < 1e-8);
      CHECK((Fm - F.conjugate()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(std::abs(F.trace().real() - static_cast<double>(ph.multiplicity)) < 1e-8);
      family.emplace_back(e, F);
      family.emplace_back(std::conj(e), Fm);
    }
    for (std::size_t i = 0; i < family.size(); ++i)
      for (std::size_t j = i + 1; j < family.size(); ++j)
        CHECK((family[i].second * family[j].second).cwiseAbs().maxCoeff() < 1e-8);
  }
  const Graph g = build_complete(3);
  const auto& proj = walk_eigenphases(g, 0).spectrum[0].projection;
  CHECK_THROWS_AS(reconstruct_F(g, 0, 2.0, proj), NumericalError);
}

TEST_CASE("matrix-free F matches the materialized one") {
  const Graph g = build_petersen();
  const AugmentedMatrix aug = build_augmented(g, 0);
  const ArcSpace arcs(g);
  const EigenphaseSet phases = walk_eigenphases(aug);
  std::vector<Complex> x(arcs.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = Complex(std::sin(1.0 + i), std::cos(2.0 * i));
  for (const auto& ph : phases.interior) {
    const auto& proj = phases.spectrum[ph.eigenspace].projection;
    const auto dense = reconstruct_F(g, 0, ph.lambda, proj) * x;
    const auto fast = apply_F(aug, arcs, ph.lambda, proj, x);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(dense[i] - fast[i]) < 1e-12);
  }
}

TEST_CASE("closed form on K3") {
  const auto r = closed_form_average(build_complete(3), 0);
  REQUIRE(r.ok());
  CHECK(std::abs(r->total - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(r->s1 - 8.0 / 27.0) < 1e-12);
  CHECK(std::abs(r->s2 - 1.0 / 27.0) < 1e-12);
  CHECK(r->witness == 1);
  CHECK(r->method == "closed-form");
}

TEST_CASE("closed form on complete graphs") {
  for (long n : {4, 6, 8, 16, 32}) {
    const auto r = closed_form_average(build_complete(n), 0);
    REQUIRE(r.ok());
    CHECK(std::abs(r->total - kn_total(static_cast<double>(n))) < 1e-10);
  }
}

TEST_CASE("closed form against the Cesàro limit of U") {
  for (const Graph& g : test_drgs()) {
    CAPTURE(g.label());
    const auto r = closed_form_average(g, 0);
    REQUIRE(r.ok());
    CHECK(std::abs(r->total - oracle::cesaro_limit(g, 0)) < 1e-8);
    CHECK(r->witness_spread < 1e-9);
    CHECK(std::abs(r->s1 + r->s2 - r->total) < 1e-15);
    const auto limit = spectral_average_from_x0(g, 0);
    REQUIRE(limit.ok());
    double marked = 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < limit->size(); ++i) {
      if (i < g.degree(0)) marked += (*limit)[i];
      sum += (*limit)[i];
    }
    CHECK(std::abs(marked - r->total) < 1e-9);
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("hypothesis refusals") {
  const auto prism = closed_form_average(triangular_prism(), 0);
  REQUIRE_FALSE(prism.ok());
  CHECK(prism.refusal().condition == "equitable-distance-partition");

  const Graph cut = four_regular_with_cut_vertex();
  REQUIRE(cut.common_degree() == std::optional<std::size_t>(4));
  const auto limit = spectral_average_from_x0(cut, 0);
  REQUIRE_FALSE(limit.ok());
  CHECK(limit.refusal().condition == "2-connected");

  CHECK_THROWS_AS(closed_form_average(build_path(4), 0), HypothesisError);
}

TEST_CASE("K3 augmented matrix") {
  const AugmentedMatrix aug = build_augmented(build_complete(3), 0);
  const double want[3][3] = {{0, 1, -1}, {1, 0, 1}, {-1, 1, 0}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(aug.entries(i, j) - Complex(want[i][j])) < 1e-15);
  const EigenphaseSet phases = walk_eigenphases(aug);
  REQUIRE(phases.boundary.size() == 1);
  CHECK(phases.spectrum[phases.boundary[0]].value == doctest::Approx(-2.0));
  REQUIRE(phases.interior.size() == 1);
  CHECK(phases.interior[0].theta == doctest::Approx(std::numbers::pi / 3));
  CHECK(phases.interior[0].multiplicity == 2);
}

TEST_CASE("main eigenvalues of X\\a are eigenvalues of the augmented matrix") {
  for (const Graph& g : test_drgs()) {
    CAPTURE(g.label());
    const AugmentedMatrix aug = build_augmented(g, 0);
    const HermitianSpectrum spec = herm_eig(aug.entries);
    const RealSpectrum del = sym_eig(aug.deleted.graph.adjacency_matrix());
    const double k = static_cast<double>(aug.degree);
    for (const auto& es : del.eigenspaces) {
      CHECK(es.value < k);
      CHECK(es.value > -k);
      const std::vector<double> ones(es.projection.rows(), 1.0);
      const auto e1 = es.projection * ones;
      double norm = 0.0;
      for (double x : e1) norm += x * x;
      if (std::sqrt(norm) > 1e-6) CHECK(spec.find(es.value, 1e-8).has_value());
    }
    double trace = 0.0;
    for (const auto& es : spec.eigenspaces) trace += es.value * static_cast<double>(es.multiplicity);
    CHECK(std::abs(Complex(trace) - dtqw::trace(aug.entries)) < 1e-9);
  }
}

TEST_CASE("contributing eigenphases and the marked-row formula") {
  for (const Graph& g : {build_complete(3), build_complete(5), build_cycle(6), build_petersen(), build_hamming(2, 3)}) {
    CAPTURE(g.label());
    const AugmentedMatrix aug = build_augmented(g, 0);
    const ArcSpace arcs(g);
    const EigenphaseSet phases = walk_eigenphases(aug);
    const RealSpectrum del = sym_eig(aug.deleted.graph.adjacency_matrix());
    const std::vector<Complex> ones(arcs.size(), 1.0);
    const std::vector<double> del_ones(aug.deleted.graph.order(), 1.0);
    for (const auto& ph : phases.interior) {
      const auto& proj = phases.spectrum[ph.eigenspace].projection;
      const auto f1 = apply_F(aug, arcs, ph.lambda, proj, ones);
      const auto match = del.find(ph.lambda, 1e-8);
      std::vector<double> e1(del_ones.size(), 0.0);
      if (match) e1 = del[*match].projection * del_ones;
      double f_norm = 0.0;
      for (const Complex& z : f1) f_norm += std::norm(z);
      if (f_norm > 1e-16) CHECK(match.has_value());
      const double s2 = std::sin(ph.theta) * std::sin(ph.theta);
      const Complex factor = (1.0 - std::polar(1.0, ph.theta)) / (2.0 * s2);
      for (std::size_t j = 0; j < g.degree(0); ++j) {
        const Vertex v = g.neighbors(0)[j];
        const Complex want = factor * e1[*aug.deleted.new_label[v]];
        CHECK(std::abs(f1[arcs.index(0, j)] - want) < 1e-8);
      }
    }
  }
}

TEST_CASE("spectral limit agrees with the simulated time average on K3") {
  const auto limit = spectral_average_from_x0(build_complete(3), 0);
  REQUIRE(limit.ok());
  const auto avg = time_average_distribution(WalkOperators(ArcSpace(build_complete(3)), 0), 200000);
  for (std::size_t i = 0; i < avg.size(); ++i) CHECK(std::abs((*limit)[i] - avg[i]) < 5e-3);
}
