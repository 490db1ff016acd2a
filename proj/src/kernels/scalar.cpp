#include "dtqw/kernels.hpp"

namespace dtqw::kernels {
namespace {

void coin_blocks_scalar(const double* in, double* out, std::size_t blocks, std::size_t degree,
                        std::size_t marked, bool oracle) {
  const double inv_degree = 1.0 / static_cast<double>(degree);
  for (std::size_t u = 0; u < blocks; ++u) {
    const double* x = in + u * degree;
    double* y = out + u * degree;
    double sum = 0.0;
    for (std::size_t j = 0; j < degree; ++j) sum += x[j];
    const double sign = (oracle && u == marked) ? -1.0 : 1.0;
    const double two_mean = 2.0 * sum * inv_degree;
    for (std::size_t j = 0; j < degree; ++j) y[j] = sign * (two_mean - x[j]);
  }
}

void gather_scalar(const double* src, const std::int32_t* index, double* dst, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) dst[i] = src[index[i]];
}

void accumulate_squares_scalar(const double* x, double* acc, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) acc[i] += x[i] * x[i];
}

void rotate_pair_scalar(double* x, double* y, std::size_t len, double c, double s) {
  for (std::size_t i = 0; i < len; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

double dot_scalar(const double* x, const double* y, std::size_t len) {
  double sum = 0.0;
  for (std::size_t i = 0; i < len; ++i) sum += x[i] * y[i];
  return sum;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::scalar,         "scalar",           &coin_blocks_scalar,
                                 &gather_scalar,      &accumulate_squares_scalar,
                                 &rotate_pair_scalar, &dot_scalar};
  return table;
}

}  // namespace dtqw::kernels
