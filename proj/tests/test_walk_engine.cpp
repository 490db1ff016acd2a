#include <doctest.h>

#include <numeric>
#include <random>

#include "dtqw/walk.hpp"
#include "oracles.hpp"

using namespace dtqw;

namespace {

double max_diff(const RealMatrix& a, const oracle::MatrixXd& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
  return m;
}

std::vector<Graph> small_graphs() {
  return {build_complete(3), build_complete(5), build_cycle(6), build_petersen(), build_hypercube(3)};
}

}  // namespace

TEST_CASE("arc space layout") {
  const ArcSpace arcs(build_petersen());
  CHECK(arcs.size() == 30);
  CHECK(arcs.degree() == 3);
  const auto rev = arcs.reversal();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    CHECK(static_cast<std::size_t>(rev[rev[i]]) == i);
    const auto [u, v] = arcs.endpoints(i);
    CHECK(arcs.arc(u, v) == i);
    CHECK(arcs.endpoints(rev[i]) == Edge{v, u});
    CHECK(i / 3 == u);
  }
  CHECK_THROWS_AS(arcs.arc(0, 1), ParameterError);
  CHECK_THROWS_AS(ArcSpace(build_path(4)), HypothesisError);
  const std::vector<Edge> single{{0, 1}};
  CHECK_THROWS_AS(ArcSpace(Graph(2, single)), HypothesisError);
}

TEST_CASE("dense operators match their definitions") {
  for (const Graph& g : small_graphs()) {
    CAPTURE(g.label());
    for (Vertex a : {Vertex{0}, g.order() - 1}) {
      const WalkOperators ops(ArcSpace(g), a);
      const DenseWalk dense = materialize(ops);
      const oracle::DenseWalk ref = oracle::walk_matrices(g, a);
      CHECK(max_diff(dense.R, ref.R) == 0.0);
      CHECK(max_diff(dense.C, ref.C) < 1e-15);
      CHECK(max_diff(dense.O, ref.O) == 0.0);
      CHECK(max_diff(dense.U, ref.U) < 1e-14);
      // U is orthogonal
      const oracle::MatrixXd u = oracle::to_eigen(dense.U);
      CHECK((u.transpose() * u - oracle::MatrixXd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
  CHECK_THROWS_AS(materialize(WalkOperators(ArcSpace(build_complete(9)), 0)), ParameterError);
}

TEST_CASE("matrix-free application matches the dense product") {
  const Graph g = build_petersen();
  const WalkOperators ops(ArcSpace(g), 3);
  const DenseWalk dense = materialize(ops);
  std::vector<double> x(30);
  std::iota(x.begin(), x.end(), -7.0);
  const WalkState s(x);
  const auto check = [&](const WalkState& got, const RealMatrix& m) {
    const auto want = m * std::span<const double>(x);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(got.real()[i] == doctest::Approx(want[i]));
  };
  check(ops.apply_R(s), dense.R);
  check(ops.apply_C(s), dense.C);
  check(ops.apply_O(s), dense.O);
  check(ops.apply_U(s), dense.U);
  const WalkState composed = ops.apply_R(ops.apply_C(ops.apply_O(s)));
  std::vector<double> out(30), scratch(30);
  ops.step(x, out, scratch);
  for (std::size_t i = 0; i < 30; ++i) {
    CHECK(out[i] == doctest::Approx(composed.real()[i]));
    CHECK(out[i] == doctest::Approx(ops.apply_U(s).real()[i]));
  }
  std::vector<double> short_out(29);
  CHECK_THROWS_AS(ops.step(x, short_out, scratch), ParameterError);
}

TEST_CASE("evolution preserves the norm") {
  const WalkOperators ops(ArcSpace(build_hamming(2, 3)), 0);
  WalkState s = initial_state(ops.arcs());
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.real()[0] == doctest::Approx(1.0 / 6.0));  // 1/sqrt(36)
  for (int t = 0; t < 500; ++t) s = ops.apply_U(s);
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("complex states") {
  const std::vector<Complex> good{{1, 0}, {0.5, 1e-16}};
  CHECK(WalkState::from_complex(good).real()[1] == 0.5);
  const std::vector<Complex> bad{{1, 0}, {0.5, 1e-3}};
  CHECK_THROWS_AS(WalkState::from_complex(bad), ParameterError);
}

TEST_CASE("time-averaged distribution") {
  for (const Graph& g : small_graphs()) {
    CAPTURE(g.label());
    const WalkOperators ops(ArcSpace(g), 0);
    for (std::size_t T : {1u, 2u, 37u, 500u}) {
      const auto dist = time_average_distribution(ops, T);
      const auto ref = oracle::time_average(g, 0, T);
      double sum = 0.0;
      for (std::size_t i = 0; i < dist.size(); ++i) {
        CHECK(dist[i] >= 0.0);
        CHECK(std::abs(dist[i] - ref(static_cast<Eigen::Index>(i))) < 1e-12);
        sum += dist[i];
      }
      CHECK(std::abs(sum - 1.0) < 1e-10);
      double marked = 0.0;
      for (std::size_t j = 0; j < g.degree(0); ++j) marked += dist[j];
      CHECK(marked_mass(ops, dist) == doctest::Approx(marked));
      CHECK(empirical_average_search_probability(ops, T) == doctest::Approx(marked));
    }
  }
  const WalkOperators ops(ArcSpace(build_complete(3)), 0);
  CHECK_THROWS_AS(time_average_distribution(ops, 0), ParameterError);
}

TEST_CASE("search probability at a fixed time") {
  const Graph g = build_complete(4);
  const WalkOperators ops(ArcSpace(g), 1);
  const oracle::DenseWalk w = oracle::walk_matrices(g, 1);
  oracle::VectorXd x = oracle::uniform_start(g);
  for (std::size_t t = 0; t < 6; ++t) {
    const double want = x.segment(3, 3).squaredNorm();  // arcs leaving vertex 1
    CHECK(search_probability_at(ops, t) == doctest::Approx(want));
    x = w.U * x;
  }
}

TEST_CASE("empirical average on K3") {
  const WalkOperators ops(ArcSpace(build_complete(3)), 0);
  CHECK(std::abs(empirical_average_search_probability(ops, 1000000) - 1.0 / 3.0) < 2e-3);
}

TEST_CASE("R, C and O are involutions") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> dist;
  for (const Graph& g : small_graphs()) {
    const WalkOperators ops(ArcSpace(g), 1);
    std::vector<double> x(ops.arcs().size());
    for (auto& v : x) v = dist(rng);
    const WalkState s(x);
    for (const WalkState& twice : {ops.apply_R(ops.apply_R(s)), ops.apply_C(ops.apply_C(s)), ops.apply_O(ops.apply_O(s))})
      for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(twice.real()[i] - x[i]) < 1e-12);
  }
}

TEST_CASE("oracle on K3") {
  // arcs 0->1, 0->2, 1->0, 1->2, 2->0, 2->1; the arcs leaving the marked vertex are negated
  const WalkOperators ops(ArcSpace(build_complete(3)), 0);
  const WalkState o = ops.apply_O(initial_state(ops.arcs()));
  const double e = 1.0 / std::sqrt(6.0);
  const std::vector<double> want{-e, -e, e, e, e, e};
  for (std::size_t i = 0; i < 6; ++i) CHECK(o.real()[i] == doctest::Approx(want[i]));
  CHECK(ops.arcs().endpoints(2) == Edge{1, 0});
}

TEST_CASE("amplitudes stay real") {
  const WalkOperators ops(ArcSpace(build_petersen()), 0);
  WalkState s = initial_state(ops.arcs());
  for (int t = 0; t < 50; ++t) s = ops.apply_U(s);
  for (const Complex& z : s.amplitudes()) CHECK(z.imag() == 0.0);
}
