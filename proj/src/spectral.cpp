#include "dtqw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace dtqw {

namespace {

std::size_t require_walk_degree(const Graph& g) {
  const auto k = g.common_degree();
  if (!k) throw HypothesisError("regular", "graph is not regular");
  if (*k < 2) throw HypothesisError("valency", "need k >= 2, got " + std::to_string(*k));
  return *k;
}

Complex unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

double checked_theta(double lambda, std::size_t k) {
  const double kd = static_cast<double>(k);
  if (!(std::abs(lambda) < kd))
    throw NumericalError("eigenvalue " + std::to_string(lambda) + " is not strictly inside (-k, k)");
  return std::acos(lambda / kd);
}

// y = N^* x, in augmented coordinates.
std::vector<Complex> embed_adjoint(const AugmentedMatrix& aug, const ComplexMatrix& vdm,
                                   std::span<const Complex> x) {
  const std::size_t k = aug.degree;
  std::vector<Complex> y(aug.dimension());
  for (std::size_t m = 0; m + 1 < k; ++m) {
    Complex s{};
    for (std::size_t j = 0; j < k; ++j) s += std::conj(vdm(j, m)) * x[aug.marked * k + j];
    y[m] = s;
  }
  for (Vertex u = 0; u < aug.deleted.new_label.size(); ++u) {
    if (u == aug.marked) continue;
    Complex s{};
    for (std::size_t j = 0; j < k; ++j) s += x[u * k + j];
    y[aug.coordinate_of(u)] = s;
  }
  return y;
}

// x = N z, in arc coordinates.
std::vector<Complex> embed(const AugmentedMatrix& aug, const ComplexMatrix& vdm, std::span<const Complex> z) {
  const std::size_t k = aug.degree;
  const std::size_t n = aug.deleted.new_label.size();
  std::vector<Complex> x(n * k);
  for (std::size_t j = 0; j < k; ++j) {
    Complex s{};
    for (std::size_t m = 0; m + 1 < k; ++m) s += vdm(j, m) * z[m];
    x[aug.marked * k + j] = s;
  }
  for (Vertex u = 0; u < n; ++u) {
    if (u == aug.marked) continue;
    const Complex value = z[aug.coordinate_of(u)];
    for (std::size_t j = 0; j < k; ++j) x[u * k + j] = value;
  }
  return x;
}

std::vector<Complex> reverse_arcs(const ArcSpace& arcs, std::span<const Complex> x) {
  std::vector<Complex> out(x.size());
  auto rev = arcs.reversal();
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[static_cast<std::size_t>(rev[i])];
  return out;
}

}  // namespace

ComplexMatrix vandermonde_block(std::size_t k) {
  if (k < 2) throw ParameterError("Vandermonde block needs k >= 2");
  ComplexMatrix out(k, k - 1);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t m = 1; m < k; ++m)
      // Reduce j*m mod k first so the angle stays in [0, 2pi).
      out(j, m - 1) = unit_phase(2.0 * std::numbers::pi * static_cast<double>((j * m) % k) /
                                 static_cast<double>(k));
  return out;
}

AugmentedMatrix build_augmented(const Graph& g, Vertex a) {
  const std::size_t k = require_walk_degree(g);
  if (a >= g.order()) throw ParameterError("marked vertex out of range");
  if (!is_connected(g)) throw HypothesisError("connected", "graph is not connected");
  AugmentedMatrix aug;
  aug.degree = k;
  aug.marked = a;
  aug.clone_count = k - 1;
  aug.deleted = vertex_deleted(g, a);
  const std::size_t dim = aug.clone_count + aug.deleted.graph.order();
  aug.entries = ComplexMatrix(dim, dim);

  const ComplexMatrix vdm = vandermonde_block(k);
  auto nbrs = g.neighbors(a);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t r = aug.coordinate_of(nbrs[j]);
    aug.neighbor_rows.push_back(r);
    for (std::size_t m = 0; m < aug.clone_count; ++m) {
      aug.entries(r, m) = vdm(j, m);
      aug.entries(m, r) = std::conj(vdm(j, m));
    }
  }
  const Graph& rest = aug.deleted.graph;
  for (Vertex u = 0; u < rest.order(); ++u)
    for (Vertex v : rest.neighbors(u)) aug.entries(aug.clone_count + u, aug.clone_count + v) = 1.0;
  return aug;
}

ComplexMatrix arc_embedding(const AugmentedMatrix& aug, const ArcSpace& arcs) {
  const std::size_t k = aug.degree;
  const ComplexMatrix vdm = vandermonde_block(k);
  ComplexMatrix n_mat(arcs.size(), aug.dimension());
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t m = 0; m < aug.clone_count; ++m) n_mat(aug.marked * k + j, m) = vdm(j, m);
  for (Vertex u = 0; u < arcs.vertex_count(); ++u) {
    if (u == aug.marked) continue;
    for (std::size_t j = 0; j < k; ++j) n_mat(u * k + j, aug.coordinate_of(u)) = 1.0;
  }
  return n_mat;
}

EigenphaseSet walk_eigenphases(const AugmentedMatrix& aug) {
  EigenphaseSet out;
  out.degree = aug.degree;
  out.spectrum = herm_eig(aug.entries);
  const double kd = static_cast<double>(aug.degree);
  for (std::size_t r = 0; r < out.spectrum.size(); ++r) {
    const double lambda = out.spectrum[r].value;
    if (std::abs(lambda) < kd * (1.0 - 1e-10)) {
      out.interior.push_back(Eigenphase{std::acos(lambda / kd), lambda, out.spectrum[r].multiplicity, r});
    } else {
      out.boundary.push_back(r);
    }
  }
  return out;
}

EigenphaseSet walk_eigenphases(const Graph& g, Vertex a) { return walk_eigenphases(build_augmented(g, a)); }

ComplexMatrix reconstruct_F(const Graph& g, Vertex a, double lambda, const ComplexMatrix& projection,
                            int phase_sign) {
  const AugmentedMatrix aug = build_augmented(g, a);
  const ArcSpace arcs(g);
  const double theta = checked_theta(lambda, aug.degree);
  if (projection.rows() != aug.dimension() || !projection.square())
    throw ParameterError("reconstruct_F: projection has the wrong dimension");
  const Complex phase = unit_phase(phase_sign >= 0 ? theta : -theta);

  const ComplexMatrix n_mat = arc_embedding(aug, arcs);
  ComplexMatrix m = n_mat;
  auto rev = arcs.reversal();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto src = n_mat.row(static_cast<std::size_t>(rev[i]));
    auto dst = m.row(i);
    for (std::size_t c = 0; c < m.cols(); ++c) dst[c] -= phase * src[c];
  }
  const double sin_theta = std::sin(theta);
  const double scale = 1.0 / (2.0 * static_cast<double>(aug.degree) * sin_theta * sin_theta);
  return scaled(m * projection * adjoint(m), scale);
}

std::vector<Complex> apply_F(const AugmentedMatrix& aug, const ArcSpace& arcs, double lambda,
                             const ComplexMatrix& projection, std::span<const Complex> x) {
  if (x.size() != arcs.size()) throw ParameterError("apply_F: state length mismatch");
  const double theta = checked_theta(lambda, aug.degree);
  const Complex phase = unit_phase(theta);
  const ComplexMatrix vdm = vandermonde_block(aug.degree);

  // (N - e^{i theta} R N)^* x = N^* x - e^{-i theta} N^* R x
  std::vector<Complex> y = embed_adjoint(aug, vdm, x);
  const std::vector<Complex> y_rev = embed_adjoint(aug, vdm, reverse_arcs(arcs, x));
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= std::conj(phase) * y_rev[i];

  const std::vector<Complex> w = projection * y;

  std::vector<Complex> out = embed(aug, vdm, w);
  const std::vector<Complex> out_rev = reverse_arcs(arcs, out);
  const double sin_theta = std::sin(theta);
  const double scale = 1.0 / (2.0 * static_cast<double>(aug.degree) * sin_theta * sin_theta);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (out[i] - phase * out_rev[i]) * scale;
  return out;
}

Outcome<AvgSearchReport> closed_form_average(const Graph& g, Vertex a) {
  const std::size_t k = require_walk_degree(g);
  if (a >= g.order()) throw ParameterError("marked vertex out of range");
  const auto equitable = check_equitable(g, distance_partition(g, a));
  if (!equitable) {
    Refusal r = equitable.refusal();
    r.condition = "equitable-distance-partition";
    r.detail = "closed form needs an equitable distance partition at the marked vertex (" +
               r.detail + ")";
    return r;
  }

  const VertexDeleted del = vertex_deleted(g, a);
  const RealSpectrum spectrum = sym_eig(del.graph.adjacency_matrix());
  const double kd = static_cast<double>(k);
  const double nd = static_cast<double>(g.order());

  // E_lambda 1 for every eigenspace.
  std::vector<std::vector<double>> row_sums;
  for (const auto& es : spectrum.eigenspaces) {
    if (!(std::abs(es.value) < kd))
      throw NumericalError("eigenvalue " + std::to_string(es.value) + " of X\\a outside (-k, k)");
    std::vector<double> sums(es.projection.rows());
    for (std::size_t i = 0; i < sums.size(); ++i)
      for (double x : es.projection.row(i)) sums[i] += x;
    row_sums.push_back(std::move(sums));
  }

  auto evaluate = [&](Vertex v) {
    AvgSearchReport rep;
    const std::size_t coord = *del.new_label[v];
    double weighted = 0.0;
    for (std::size_t r = 0; r < spectrum.size(); ++r) {
      const double lambda = spectrum[r].value;
      ContributionRow row;
      row.lambda = lambda;
      row.multiplicity = spectrum[r].multiplicity;
      row.ev_e1 = row_sums[r][coord];
      row.s1_term = kd * kd * kd / ((kd - lambda) * (kd + lambda) * (kd + lambda)) * row.ev_e1 * row.ev_e1 / nd;
      row.s2_weight = kd / (kd + lambda) * row.ev_e1;
      rep.s1 += row.s1_term;
      weighted += row.s2_weight;
      rep.rows.push_back(row);
    }
    rep.s2 = (1.0 - weighted) * (1.0 - weighted) / nd;
    rep.total = rep.s1 + rep.s2;
    rep.witness = v;
    return rep;
  };

  auto nbrs = g.neighbors(a);
  AvgSearchReport report = evaluate(nbrs.front());
  double lo = report.total;
  double hi = report.total;
  for (Vertex v : nbrs.subspan(1)) {
    const double t = evaluate(v).total;
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  report.witness_spread = hi - lo;
  if (report.witness_spread >= 1e-9)
    return Refusal{"neighbour-independence",
                   "closed form differs across neighbours of the marked vertex by " +
                       std::to_string(report.witness_spread),
                   a, {}};
  report.graph_id = g.label();
  report.marked = a;
  report.n = g.order();
  report.k = k;
  if (report.total < -1e-12 || report.total > 1.0 + 1e-12)
    throw NumericalError("closed-form total " + std::to_string(report.total) + " outside [0,1]");
  return report;
}

Outcome<std::vector<double>> spectral_average_from_x0(const Graph& g, Vertex a) {
  require_walk_degree(g);
  if (!is_two_connected(g))
    return Refusal{"2-connected",
                   "the 1-eigenspace of U is only known to be orthogonal to x0 for 2-connected graphs",
                   {}, {}};
  const AugmentedMatrix aug = build_augmented(g, a);
  const ArcSpace arcs(g);
  const EigenphaseSet phases = walk_eigenphases(aug);
  const std::vector<Complex> x0 = initial_state(arcs).amplitudes();

  std::vector<double> dist(arcs.size(), 0.0);
  std::vector<Complex> covered(arcs.size());
  for (const auto& ph : phases.interior) {
    const auto f = apply_F(aug, arcs, ph.lambda, phases.spectrum[ph.eigenspace].projection, x0);
    for (std::size_t i = 0; i < f.size(); ++i) {
      // F_{-theta} x0 = conj(F_theta x0) since x0 is real.
      dist[i] += 2.0 * std::norm(f[i]);
      covered[i] += f[i] + std::conj(f[i]);
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    dist[i] += std::norm(x0[i] - covered[i]);
    total += dist[i];
  }
  if (std::abs(total - 1.0) > 1e-8)
    throw NumericalError("spectral average distribution sums to " + std::to_string(total));
  return dist;
}

}  // namespace dtqw
