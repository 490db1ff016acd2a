#include "dtqw/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define DTQW_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#endif

namespace dtqw::kernels {

#if DTQW_HAVE_AVX2_KERNELS

#define DTQW_AVX2 __attribute__((target("avx2,fma")))

namespace {

DTQW_AVX2 inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

DTQW_AVX2 void coin_blocks_avx2(const double* in, double* out, std::size_t blocks,
                                std::size_t degree, std::size_t marked, bool oracle) {
  const double inv_degree = 1.0 / static_cast<double>(degree);
  const std::size_t vec_end = degree & ~std::size_t{3};
  for (std::size_t u = 0; u < blocks; ++u) {
    const double* x = in + u * degree;
    double* y = out + u * degree;

    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j < vec_end; j += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + j));
    double sum = horizontal_sum(acc);
    for (; j < degree; ++j) sum += x[j];

    const double sign = (oracle && u == marked) ? -1.0 : 1.0;
    const double two_mean = 2.0 * sum * inv_degree;
    const __m256d vsign = _mm256_set1_pd(sign);
    const __m256d vshift = _mm256_set1_pd(sign * two_mean);
    for (j = 0; j < vec_end; j += 4) {
      // sign * two_mean - sign * x
      _mm256_storeu_pd(y + j, _mm256_fnmadd_pd(vsign, _mm256_loadu_pd(x + j), vshift));
    }
    for (; j < degree; ++j) y[j] = sign * (two_mean - x[j]);
  }
}

DTQW_AVX2 void gather_avx2(const double* src, const std::int32_t* index, double* dst,
                           std::size_t len) {
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(index + i));
    _mm256_storeu_pd(dst + i, _mm256_i32gather_pd(src, idx, 8));
  }
  for (; i < len; ++i) dst[i] = src[index[i]];
}

DTQW_AVX2 void accumulate_squares_avx2(const double* x, double* acc, std::size_t len) {
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(v, v, _mm256_loadu_pd(acc + i)));
  }
  for (; i < len; ++i) acc[i] += x[i] * x[i];
}

DTQW_AVX2 void rotate_pair_avx2(double* x, double* y, std::size_t len, double c, double s) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d xi = _mm256_loadu_pd(x + i);
    const __m256d yi = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(x + i, _mm256_fmsub_pd(vc, xi, _mm256_mul_pd(vs, yi)));
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vs, xi, _mm256_mul_pd(vc, yi)));
  }
  for (; i < len; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

DTQW_AVX2 double dot_avx2(const double* x, const double* y, std::size_t len) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  if (i + 4 <= len) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    i += 4;
  }
  double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < len; ++i) sum += x[i] * y[i];
  return sum;
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{Isa::avx2,         "avx2",           &coin_blocks_avx2,
                                 &gather_avx2,      &accumulate_squares_avx2,
                                 &rotate_pair_avx2, &dot_avx2};
  return &table;
}

#else

const KernelTable* avx2_table() { return nullptr; }

#endif

}  // namespace dtqw::kernels
