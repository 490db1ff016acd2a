#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "dtqw/kernels.hpp"

using namespace dtqw::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

const KernelTable* simd() {
  const KernelTable* t = avx2_table();
  return t != nullptr && cpu_supports(Isa::avx2) ? t : nullptr;
}

}  // namespace

TEST_CASE("scalar coin reflects each block about its mean") {
  const std::vector<double> in{1, 2, 3, 4, 5, 6};
  std::vector<double> out(6);
  scalar_table().coin_blocks(in.data(), out.data(), 2, 3, 1, true);
  // block 0: mean 2; block 1 (marked): mean 5, negated
  CHECK(out == std::vector<double>{3, 2, 1, -6, -5, -4});
  scalar_table().coin_blocks(in.data(), out.data(), 2, 3, 1, false);
  CHECK(out == std::vector<double>{3, 2, 1, 6, 5, 4});
}

TEST_CASE("scalar gather, squares, rotation and dot") {
  const KernelTable& s = scalar_table();
  const std::vector<double> src{10, 20, 30, 40};
  const std::vector<std::int32_t> idx{3, 0, 2, 1};
  std::vector<double> dst(4);
  s.gather(src.data(), idx.data(), dst.data(), 4);
  CHECK(dst == std::vector<double>{40, 10, 30, 20});

  std::vector<double> acc{1, 1};
  const std::vector<double> x{2, -3};
  s.accumulate_squares(x.data(), acc.data(), 2);
  CHECK(acc == std::vector<double>{5, 10});

  std::vector<double> a{1, 0}, b{0, 1};
  s.rotate_pair(a.data(), b.data(), 2, 0.0, 1.0);  // quarter turn
  CHECK(a[0] == doctest::Approx(0.0));
  CHECK(a[1] == doctest::Approx(-1.0));
  CHECK(b[0] == doctest::Approx(1.0));
  CHECK(b[1] == doctest::Approx(0.0));

  CHECK(s.dot(src.data(), src.data(), 4) == doctest::Approx(3000.0));
}

TEST_CASE("table lookup") {
  CHECK(table_for(Isa::scalar).isa == Isa::scalar);
  CHECK(active().name != nullptr);
  if (simd() == nullptr) CHECK_THROWS(table_for(Isa::avx2));
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  const KernelTable* v = simd();
  if (v == nullptr) {
    MESSAGE("AVX2 not available on this machine; equivalence not exercised");
    return;
  }
  const KernelTable& s = scalar_table();
  std::mt19937_64 rng(20240611);

  SUBCASE("coin_blocks") {
    for (std::size_t k = 2; k <= 11; ++k) {
      for (std::size_t blocks : {1u, 3u, 17u}) {
        const auto in = random_vector(k * blocks, rng);
        std::vector<double> a(in.size()), b(in.size());
        for (bool oracle : {false, true}) {
          const std::size_t marked = blocks / 2;
          s.coin_blocks(in.data(), a.data(), blocks, k, marked, oracle);
          v->coin_blocks(in.data(), b.data(), blocks, k, marked, oracle);
          for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-15 * (1 + std::abs(a[i])));
        }
      }
    }
  }

  SUBCASE("gather is exact") {
    for (std::size_t n : {1u, 4u, 7u, 64u, 1001u}) {
      const auto src = random_vector(n, rng);
      std::vector<std::int32_t> idx(n);
      std::iota(idx.begin(), idx.end(), 0);
      std::shuffle(idx.begin(), idx.end(), rng);
      std::vector<double> a(n), b(n);
      s.gather(src.data(), idx.data(), a.data(), n);
      v->gather(src.data(), idx.data(), b.data(), n);
      CHECK(a == b);
    }
  }

  SUBCASE("accumulate_squares") {
    for (std::size_t n : {1u, 3u, 4u, 5u, 33u, 1000u}) {
      const auto x = random_vector(n, rng);
      auto a = random_vector(n, rng);
      auto b = a;
      s.accumulate_squares(x.data(), a.data(), n);
      v->accumulate_squares(x.data(), b.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-15 * (1 + std::abs(a[i])));
    }
  }

  SUBCASE("rotate_pair") {
    for (std::size_t n : {1u, 2u, 4u, 7u, 64u, 999u}) {
      const auto x0 = random_vector(n, rng);
      const auto y0 = random_vector(n, rng);
      const double c = std::cos(0.3), sn = std::sin(0.3);
      auto xa = x0, ya = y0, xb = x0, yb = y0;
      s.rotate_pair(xa.data(), ya.data(), n, c, sn);
      v->rotate_pair(xb.data(), yb.data(), n, c, sn);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(xa[i] - xb[i]) <= 1e-15);
        CHECK(std::abs(ya[i] - yb[i]) <= 1e-15);
      }
    }
  }

  SUBCASE("dot") {
    for (std::size_t n : {0u, 1u, 3u, 8u, 9u, 100u, 4097u}) {
      const auto x = random_vector(n, rng);
      const auto y = random_vector(n, rng);
      const double a = s.dot(x.data(), y.data(), n);
      const double b = v->dot(x.data(), y.data(), n);
      CHECK(std::abs(a - b) <= 1e-13 * (1.0 + static_cast<double>(n)));
    }
  }
}
