#pragma once

// Data-parallel inner loops shared by the walk simulator and the Jacobi
// eigensolver. Each kernel has a scalar reference implementation and, where
// the build target allows it, an AVX2/FMA variant. The variant is chosen once
// at runtime from CPUID; DTQW_SIMD=scalar forces the reference path.

#include <cstddef>
#include <cstdint>
#include <span>

namespace dtqw::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  const char* name;

  // Per-block Grover reflection on consecutive blocks of `degree` entries:
  // out_j = s_u * (2 * mean(in_block) - in_j), where s_u = -1 for the marked
  // block when `oracle` is set and +1 otherwise.
  void (*coin_blocks)(const double* in, double* out, std::size_t blocks, std::size_t degree,
                      std::size_t marked, bool oracle);
  // dst[i] = src[index[i]]
  void (*gather)(const double* src, const std::int32_t* index, double* dst, std::size_t len);
  // acc[i] += x[i]^2
  void (*accumulate_squares)(const double* x, double* acc, std::size_t len);
  // (x, y) <- (c x - s y, s x + c y)
  void (*rotate_pair)(double* x, double* y, std::size_t len, double c, double s);
  double (*dot)(const double* x, const double* y, std::size_t len);
};

const KernelTable& scalar_table();
/// nullptr when the AVX2 variant was not compiled for this target.
const KernelTable* avx2_table();
bool cpu_supports(Isa isa);

/// Table selected at first use. Thread-safe.
const KernelTable& active();
/// Table for a specific ISA; throws ParameterError if unavailable.
const KernelTable& table_for(Isa isa);

inline void coin_blocks(std::span<const double> in, std::span<double> out, std::size_t degree,
                        std::size_t marked, bool oracle) {
  active().coin_blocks(in.data(), out.data(), in.size() / degree, degree, marked, oracle);
}
inline void gather(std::span<const double> src, std::span<const std::int32_t> index,
                   std::span<double> dst) {
  active().gather(src.data(), index.data(), dst.data(), index.size());
}
inline void accumulate_squares(std::span<const double> x, std::span<double> acc) {
  active().accumulate_squares(x.data(), acc.data(), x.size());
}
inline void rotate_pair(std::span<double> x, std::span<double> y, double c, double s) {
  active().rotate_pair(x.data(), y.data(), x.size(), c, s);
}
inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}

}  // namespace dtqw::kernels
