#include <cstdlib>
#include <string_view>

#include "dtqw/errors.hpp"
#include "dtqw/kernels.hpp"

namespace dtqw::kernels {

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
      return avx2_table() != nullptr && __builtin_cpu_supports("avx2") &&
             __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table_for(Isa isa) {
  if (isa == Isa::scalar) return scalar_table();
  if (!cpu_supports(isa)) throw ParameterError("requested kernel ISA is not available on this CPU");
  return *avx2_table();
}

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* forced = std::getenv("DTQW_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_table();
    if (cpu_supports(Isa::avx2)) return *avx2_table();
    return scalar_table();
  }();
  return chosen;
}

}  // namespace dtqw::kernels
