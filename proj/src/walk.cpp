#include "dtqw/walk.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dtqw/kernels.hpp"

namespace dtqw {

ArcSpace::ArcSpace(Graph g) : graph_(std::move(g)) {
  const auto k = graph_.common_degree();
  if (!k) throw HypothesisError("regular", "the walk needs a regular graph");
  if (*k < 2) throw HypothesisError("valency", "the walk needs valency k >= 2, got " + std::to_string(*k));
  k_ = *k;
  if (size() > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()))
    throw ParameterError("arc space too large");
  reversal_.resize(size());
  for (Vertex u = 0; u < graph_.order(); ++u) {
    auto nbrs = graph_.neighbors(u);
    for (std::size_t j = 0; j < k_; ++j) {
      const Vertex v = nbrs[j];
      reversal_[index(u, j)] = static_cast<std::int32_t>(index(v, *graph_.neighbor_position(v, u)));
    }
  }
}

std::size_t ArcSpace::arc(Vertex u, Vertex v) const {
  if (u >= graph_.order()) throw ParameterError("vertex out of range");
  const auto j = graph_.neighbor_position(u, v);
  if (!j) throw ParameterError("no arc " + std::to_string(u) + "->" + std::to_string(v));
  return index(u, *j);
}

Edge ArcSpace::endpoints(std::size_t idx) const {
  const Vertex u = idx / k_;
  return {u, graph_.neighbors(u)[idx % k_]};
}

WalkState WalkState::from_complex(std::span<const Complex> amplitudes) {
  std::vector<double> re(amplitudes.size());
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    if (std::abs(amplitudes[i].imag()) > 1e-14)
      throw ParameterError("walk states are real; imaginary part at arc " + std::to_string(i));
    re[i] = amplitudes[i].real();
  }
  return WalkState(std::move(re));
}

std::vector<Complex> WalkState::amplitudes() const { return {amp_.begin(), amp_.end()}; }

double WalkState::norm() const { return std::sqrt(kernels::dot(amp_, amp_)); }

WalkState initial_state(const ArcSpace& arcs) {
  return WalkState(std::vector<double>(arcs.size(), 1.0 / std::sqrt(static_cast<double>(arcs.size()))));
}

WalkOperators::WalkOperators(ArcSpace arcs, Vertex marked) : arcs_(std::move(arcs)), marked_(marked) {
  if (marked_ >= arcs_.vertex_count())
    throw ParameterError("marked vertex " + std::to_string(marked) + " out of range");
}

void WalkOperators::check_length(std::size_t len) const {
  if (len != arcs_.size())
    throw ParameterError("state length " + std::to_string(len) + " does not match nk = " +
                         std::to_string(arcs_.size()));
}

WalkState WalkOperators::apply_R(const WalkState& s) const {
  check_length(s.size());
  std::vector<double> out(s.size());
  kernels::gather(s.real(), arcs_.reversal(), out);
  return WalkState(std::move(out));
}

WalkState WalkOperators::apply_C(const WalkState& s) const {
  check_length(s.size());
  std::vector<double> out(s.size());
  kernels::coin_blocks(s.real(), out, degree(), marked_, false);
  return WalkState(std::move(out));
}

WalkState WalkOperators::apply_O(const WalkState& s) const {
  check_length(s.size());
  std::vector<double> out(s.real().begin(), s.real().end());
  const std::size_t k = degree();
  for (std::size_t i = 0; i < out.size(); ++i)
    if (i / k == marked_) out[i] = -out[i];
  return WalkState(std::move(out));
}

WalkState WalkOperators::apply_U(const WalkState& s) const {
  check_length(s.size());
  std::vector<double> out(s.size()), scratch(s.size());
  step(s.real(), out, scratch);
  return WalkState(std::move(out));
}

void WalkOperators::step(std::span<const double> in, std::span<double> out,
                         std::span<double> scratch) const {
  // C O_a fused into one signed reflection per vertex block, then the arc reversal.
  check_length(in.size());
  check_length(out.size());
  check_length(scratch.size());
  const auto& k = kernels::active();
  k.coin_blocks(in.data(), scratch.data(), arcs_.vertex_count(), degree(), marked_, true);
  k.gather(scratch.data(), arcs_.reversal().data(), out.data(), out.size());
}

double marked_mass(const WalkOperators& ops, std::span<const double> distribution) {
  const std::size_t k = ops.degree();
  double sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) sum += distribution[ops.marked() * k + j];
  return sum;
}

double search_probability_at(const WalkOperators& ops, std::size_t t) {
  WalkState x = initial_state(ops.arcs());
  std::vector<double> next(x.size()), scratch(x.size());
  for (std::size_t s = 0; s < t; ++s) {
    ops.step(x.real(), next, scratch);
    std::copy(next.begin(), next.end(), x.real().begin());
  }
  std::vector<double> prob(x.size(), 0.0);
  kernels::accumulate_squares(x.real(), prob);
  return marked_mass(ops, prob);
}

std::vector<double> time_average_distribution(const WalkOperators& ops, std::size_t T) {
  if (T < 1) throw ParameterError("time_average_distribution needs T >= 1");
  const auto& k = kernels::active();
  const std::size_t len = ops.arcs().size();
  const WalkState x0 = initial_state(ops.arcs());
  std::vector<double> current(x0.real().begin(), x0.real().end());
  std::vector<double> next(len), scratch(len), acc(len, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    k.accumulate_squares(current.data(), acc.data(), len);
    if (t + 1 < T) {
      ops.step(current, next, scratch);
      current.swap(next);
    }
  }
  const double inv = 1.0 / static_cast<double>(T);
  for (double& v : acc) v *= inv;
  return acc;
}

double empirical_average_search_probability(const WalkOperators& ops, std::size_t T) {
  return marked_mass(ops, time_average_distribution(ops, T));
}

DenseWalk materialize(const WalkOperators& ops) {
  const ArcSpace& arcs = ops.arcs();
  const std::size_t m = arcs.size();
  if (m > kMaterializeCap)
    throw ParameterError("refusing to materialize U with nk = " + std::to_string(m) + " > " +
                         std::to_string(kMaterializeCap));
  const std::size_t k = arcs.degree();
  DenseWalk d{RealMatrix(m, m), RealMatrix(m, m), RealMatrix(m, m), RealMatrix(m, m)};
  for (std::size_t i = 0; i < m; ++i) {
    const auto [u, v] = arcs.endpoints(i);
    d.R(arcs.arc(v, u), i) = 1.0;
  }
  // C = I_n (x) (2/k J - I_k), O_a = (2 E_aa - I_n) (x) I_k
  for (std::size_t u = 0; u < arcs.vertex_count(); ++u) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j)
        d.C(u * k + i, u * k + j) = 2.0 / static_cast<double>(k) - (i == j ? 1.0 : 0.0);
      d.O(u * k + i, u * k + i) = (u == ops.marked()) ? -1.0 : 1.0;
    }
  }
  d.U = d.R * d.C * d.O;
  return d;
}

}  // namespace dtqw
