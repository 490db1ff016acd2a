#include "dtqw/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dtqw/errors.hpp"
#include "dtqw/report_writer.hpp"
#include "dtqw/spectral.hpp"
#include "dtqw/walk.hpp"

namespace dtqw::cli {

namespace {

using report::number;

constexpr double kSlackTolerance = 1e-9;
constexpr double kMatchTolerance = 1e-7;

// Raised for conditions that map straight to an exit code.
struct ExitWith {
  int code;
  std::string message;
};

long parse_long(const std::string& s) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw ParameterError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw ParameterError("not an integer: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

struct Input {
  Graph graph;
  bool from_edges = false;
};

void require_single_source(const RunConfig& cfg) {
  const int sources = (!cfg.family.empty()) + (!cfg.edges.empty()) + (!cfg.array.empty());
  if (sources != 1) throw ParameterError("exactly one of --family, --edges, --array is required");
}

Input load_graph(const RunConfig& cfg) {
  require_single_source(cfg);
  if (!cfg.array.empty()) throw ParameterError("this command needs a graph (--family or --edges), not --array");
  if (!cfg.params.empty()) throw ParameterError("--params is only accepted by sweep");
  Input in;
  if (!cfg.edges.empty()) {
    in.graph = read_edge_list(cfg.edges);
    in.from_edges = true;
  } else {
    in.graph = build_family(make_family(cfg.family, cfg.param));
  }
  return in;
}

void require_walk_hypotheses(const Graph& g) {
  const auto k = g.common_degree();
  if (!k) throw HypothesisError("regular", g.label() + " is not regular");
  if (*k < 2) throw HypothesisError("valency", g.label() + " has valency " + std::to_string(*k) + " < 2");
  if (!is_connected(g)) throw HypothesisError("connected", g.label() + " is not connected");
}

Vertex marked_vertex(const RunConfig& cfg, const Input& in) {
  if (in.from_edges && !cfg.vertex)
    throw ParameterError("--vertex is required for edge-list input");
  const std::size_t v = cfg.vertex.value_or(0);
  if (v >= in.graph.order())
    throw ParameterError("--vertex " + std::to_string(v) + " out of range for " + std::to_string(in.graph.order()) +
                         " vertices");
  return v;
}

[[noreturn]] void refuse(const Refusal& r) { throw ExitWith{kHypothesisFailure, "hypothesis failed: " + r.message()}; }

// ---------------------------------------------------------------------------

int cmd_average(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Input in = load_graph(cfg);
  require_walk_hypotheses(in.graph);
  const Vertex a = marked_vertex(cfg, in);
  const auto closed = closed_form_average(in.graph, a);
  if (!closed) refuse(closed.refusal());

  const WalkOperators ops(ArcSpace(in.graph), a);
  const double empirical = empirical_average_search_probability(ops, cfg.T);
  const double diff = std::abs(closed->total - empirical);

  report::CsvWriter csv(out, "average", {"row", "lambda", "multiplicity", "ev_e1", "s1_term", "s2_weight", "value"});
  csv.comment("graph=" + in.graph.label() + " n=" + std::to_string(closed->n) + " k=" + std::to_string(closed->k) +
              " marked=" + std::to_string(a) + " witness=" + std::to_string(closed->witness));
  for (const auto& r : closed->rows)
    csv.row({"eigenvalue", number(r.lambda), std::to_string(r.multiplicity), number(r.ev_e1), number(r.s1_term),
             number(r.s2_weight), ""});
  csv.row({"s1", "", "", "", "", "", number(closed->s1)});
  csv.row({"s2", "", "", "", "", "", number(closed->s2)});
  csv.row({"total", "", "", "", "", "", number(closed->total)});
  csv.row({"T", "", "", "", "", "", std::to_string(cfg.T)});
  csv.row({"empirical", "", "", "", "", "", number(empirical)});
  csv.row({"abs_diff", "", "", "", "", "", number(diff)});

  if (cfg.check && !(diff <= cfg.tol)) {
    err << "tolerance breach: |closed - empirical| = " << number(diff) << " > " << number(cfg.tol) << '\n';
    return kToleranceBreach;
  }
  return kOk;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Input in = load_graph(cfg);
  require_walk_hypotheses(in.graph);
  const Vertex a = marked_vertex(cfg, in);
  const AugmentedMatrix aug = build_augmented(in.graph, a);
  const EigenphaseSet phases = walk_eigenphases(aug);
  const RealSpectrum deleted = sym_eig(aug.deleted.graph.adjacency_matrix());
  const double k = static_cast<double>(aug.degree);
  const double n_del = static_cast<double>(aug.deleted.graph.order());

  std::vector<bool> is_main(deleted.size());
  for (std::size_t r = 0; r < deleted.size(); ++r) {
    double sum = 0.0;  // 1^T E 1
    const auto& p = deleted[r].projection;
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (double x : p.row(i)) sum += x;
    is_main[r] = sum > 1e-10 * n_del;
  }

  std::vector<bool> main_matched(deleted.size(), false);
  report::CsvWriter csv(out, "spectrum",
                        {"lambda", "multiplicity", "theta", "k_cos_theta", "matched_deleted_eigenvalue", "main",
                         "boundary"});
  csv.comment("graph=" + in.graph.label() + " n=" + std::to_string(in.graph.order()) +
              " k=" + std::to_string(aug.degree) + " marked=" + std::to_string(a) +
              " dimension=" + std::to_string(aug.dimension()));
  for (std::size_t r = 0; r < phases.spectrum.size(); ++r) {
    const auto& es = phases.spectrum[r];
    const bool boundary = std::find(phases.boundary.begin(), phases.boundary.end(), r) != phases.boundary.end();
    double theta = 0.0;
    if (boundary) {
      theta = es.value > 0 ? 0.0 : M_PI;
    } else {
      for (const auto& ph : phases.interior)
        if (ph.eigenspace == r) theta = ph.theta;
    }
    const auto match = deleted.find(es.value, kMatchTolerance);
    if (match && is_main[*match]) main_matched[*match] = true;
    csv.row({number(es.value), std::to_string(es.multiplicity), number(theta), number(k * std::cos(theta)),
             match ? number(deleted[*match].value) : "", match && is_main[*match] ? "1" : "0",
             boundary ? "1" : "0"});
  }

  if (cfg.check) {
    for (std::size_t r = 0; r < deleted.size(); ++r) {
      if (is_main[r] && !main_matched[r]) {
        err << "main eigenvalue " << number(deleted[r].value) << " of X\\a has no augmented match\n";
        return kToleranceBreach;
      }
    }
  }
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err, std::string* svg) {
  if (cfg.family.empty()) throw ParameterError("sweep needs --family");
  if (!cfg.edges.empty() || !cfg.array.empty()) throw ParameterError("sweep takes a family, not --edges or --array");
  if (!cfg.param.empty()) throw ParameterError("sweep takes --params, not --param");
  if (cfg.params.empty()) throw ParameterError("sweep needs a non-empty --params list");
  const SweepTable table = family_sweep(cfg.family, cfg.params);

  report::CsvWriter csv(out, "sweep",
                        {"param", "n", "k", "array", "total", "deviation", "criterion_c", "criterion_plain", "note"});
  csv.comment("family=" + table.family);
  for (const auto& r : table.rows) {
    if (r.skipped) {
      csv.row({r.param, "", "", "", "", "", "", "", "skipped: " + r.note});
      continue;
    }
    csv.row({r.param, std::to_string(r.n), std::to_string(r.k), r.array, number(r.total), number(r.deviation),
             number(r.criterion.with_c_product), number(r.criterion.plain), ""});
  }
  csv.comment(std::string("strictly_decreasing=") + (table.strictly_decreasing ? "true" : "false") +
              " overall_decreasing=" + (table.overall_decreasing ? "true" : "false"));
  if (svg) *svg = report::sweep_chart_svg(table);

  if (cfg.check && !table.overall_decreasing) {
    err << "deviation from 1/4 does not decrease across the sweep\n";
    return kToleranceBreach;
  }
  return kOk;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_single_source(cfg);
  std::optional<Input> in;
  std::optional<IntersectionArray> arr;
  Vertex a = 0;
  if (!cfg.array.empty()) {
    auto parsed = IntersectionArray::parse(cfg.array);
    if (!parsed) throw ExitWith{kInputError, "invalid intersection array: " + parsed.refusal().message()};
    arr = *parsed;
  } else {
    in = load_graph(cfg);
    require_walk_hypotheses(in->graph);
    a = marked_vertex(cfg, *in);
    auto derived = intersection_array_of(in->graph);
    if (!derived) refuse(derived.refusal());
    arr = *derived;
  }

  const std::size_t d = arr->diameter();
  std::vector<BoundCheck> checks;
  report::CsvWriter csv(out, "bounds", {"bound", "value", "actual", "slack"});
  csv.comment("array=" + arr->to_string() + " n=" + std::to_string(arr->order()) +
              " k=" + std::to_string(arr->valency()) + (in ? " graph=" + in->graph.label() : std::string()) +
              (in ? " marked=" + std::to_string(a) : std::string()));
  auto emit = [&](const BoundCheck& b) {
    csv.row({b.name, number(b.bound), b.actual ? number(*b.actual) : "", b.slack() ? number(*b.slack()) : ""});
    checks.push_back(b);
  };

  std::optional<double> sum_squares;  // sum_lambda (e_v^T E_lambda 1)^2
  if (in) {
    emit(check_bound_lambda(in->graph, a, *arr));
    emit(check_bound_evE1(in->graph, a, *arr));
    const S1Bound s1 = s1_lower_bound(in->graph, a);
    sum_squares = s1.sum_squares;
    emit(s1.check);
  } else {
    emit(BoundCheck{"lambda_max", bound_lambda(*arr), std::nullopt});
    emit(BoundCheck{"evE1", bound_evE1(*arr, largest_root_qd(*arr)), std::nullopt});
  }

  // q_{d-1}(k) against c_2...c_d, both exact
  const PolySeq dual = orthopoly(quotient_S(*arr));
  std::int64_t c_product = 1;
  for (std::size_t i = 2; i <= d; ++i) c_product *= arr->c(i);
  const std::int64_t qk = dual[d - 1].exact(arr->valency());
  csv.row({"q_{d-1}(k)", std::to_string(c_product), std::to_string(qk), ""});

  if (in) {
    const LaplacianCheck lap = check_laplacian_minor(in->graph, a, *arr);
    const auto dist = distances_from(in->graph, a);
    const VertexDeleted del = vertex_deleted(in->graph, a);
    for (std::size_t i = 0; i < lap.cellwise.size(); ++i) {
      // direct value in cell i+1 farthest from the cellwise one
      double direct = lap.cellwise[i];
      for (std::size_t j = 0; j < lap.direct.size(); ++j)
        if (dist[del.old_label[j]] == i + 1 &&
            std::abs(lap.direct[j] - lap.cellwise[i]) >= std::abs(direct - lap.cellwise[i]))
          direct = lap.direct[j];
      csv.row({"laplacian_z" + std::to_string(i + 1), number(lap.cellwise[i]), number(direct), ""});
    }
    csv.row({"laplacian_max_deviation", number(lap.max_deviation), "", ""});
    csv.row({"laplacian_strictly_increasing", lap.strictly_increasing ? "1" : "0", "", ""});
  } else {
    const auto z = laplacian_minor_solution(*arr);
    for (std::size_t i = 0; i < z.size(); ++i) csv.row({"laplacian_z" + std::to_string(i + 1), number(z[i]), "", ""});
  }

  const LimitCriterion crit = limit_criterion(*arr);
  csv.row({"criterion_c", number(crit.with_c_product), "", ""});
  csv.row({"criterion_plain", number(crit.plain), "", ""});
  if (d == 2)
    csv.row({"srg_formula_sum", number(srg_formula_sum(*arr)), sum_squares ? number(*sum_squares) : "", ""});

  if (cfg.check) {
    for (const auto& b : checks) {
      if (!b.holds(kSlackTolerance)) {
        err << "bound " << b.name << " violated: slack " << number(*b.slack()) << '\n';
        return kToleranceBreach;
      }
    }
  }
  return kOk;
}

int cmd_check_dr(const RunConfig& cfg, std::ostream& out) {
  const Input in = load_graph(cfg);
  try {
    const auto arr = intersection_array_of(in.graph);
    if (!arr) {
      out << "not distance-regular: " << arr.refusal().message() << '\n';
      return kNotDistanceRegular;
    }
    out << arr->to_string() << '\n';
    return kOk;
  } catch (const HypothesisError& e) {
    out << "not distance-regular: " << e.what() << '\n';
    return kNotDistanceRegular;
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ExitWith{kInputError, "cannot write " + path};
  f << content;
  if (!f) throw ExitWith{kInputError, "cannot write " + path};
}

std::string svg_path_for(const std::string& out) {
  const auto slash = out.find_last_of('/');
  const auto dot = out.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return out.substr(0, dot) + ".svg";
  return out + ".svg";
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.T < 1) throw ParameterError("--T must be at least 1");
  if (!(cfg.tol > 0.0)) throw ParameterError("--tol must be positive");
  if (cfg.svg && cfg.command != "sweep") throw ParameterError("--svg is only available for sweep");
  if (cfg.svg && cfg.out.empty()) throw ParameterError("--svg needs --out");

  std::ostringstream body;
  std::string svg;
  int code = kOk;
  if (cfg.command == "average") {
    code = cmd_average(cfg, body, err);
  } else if (cfg.command == "spectrum") {
    code = cmd_spectrum(cfg, body, err);
  } else if (cfg.command == "sweep") {
    code = cmd_sweep(cfg, body, err, cfg.svg ? &svg : nullptr);
  } else if (cfg.command == "bounds") {
    code = cmd_bounds(cfg, body, err);
  } else {
    code = cmd_check_dr(cfg, body);
  }

  if (cfg.out.empty()) {
    out << body.str();
  } else {
    write_file(cfg.out, body.str());
    if (cfg.svg) write_file(svg_path_for(cfg.out), svg);
  }
  return code;
}

}  // namespace

std::vector<long> parse_param(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) return {};
  const char sep = t.find(':') != std::string::npos ? ':' : ',';
  std::vector<long> out;
  for (const auto& part : split(t, sep)) out.push_back(parse_long(trim(part)));
  return out;
}

std::vector<std::vector<long>> parse_params(const std::string& text) {
  std::vector<std::vector<long>> out;
  const std::string t = trim(text);
  if (t.empty()) return out;
  for (const auto& part : split(t, ',')) {
    if (trim(part).empty()) throw ParameterError("empty entry in parameter list '" + text + "'");
    std::vector<long> tuple;
    for (const auto& x : split(trim(part), ':')) tuple.push_back(parse_long(trim(x)));
    out.push_back(std::move(tuple));
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Average search probability of a coined quantum walk on regular graphs", "dtqw"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string param_text, params_text;
  std::optional<long> vertex;
  long T = static_cast<long>(cfg.T);

  auto add_common = [&](CLI::App* sub, bool sweep) {
    sub->add_option("--family", cfg.family, "graph family: complete, cycle, path, petersen, hypercube, hamming, johnson, paley");
    if (sweep) {
      sub->add_option("--params", params_text, "parameter list, e.g. 4,8,16 or 2:3,2:4");
    } else {
      sub->add_option("--param", param_text, "family parameter, e.g. 5 or 2:3");
      sub->add_option("--params", params_text, "parameter list (sweep only)");
    }
    sub->add_option("--edges", cfg.edges, "edge-list file");
    sub->add_option("--array", cfg.array, "intersection array, e.g. \"3,2;1,1\"");
    sub->add_option("--vertex", vertex, "marked vertex (default 0 for families)");
    sub->add_option("--T", T, "simulation steps for the empirical average");
    sub->add_option("--tol", cfg.tol, "tolerance used with --check");
    sub->add_option("--out", cfg.out, "output path (stdout if omitted)");
    sub->add_flag("--svg", cfg.svg, "also write an SVG chart next to --out (sweep)");
    sub->add_flag("--check", cfg.check, "exit 2 when a check fails");
  };

  add_common(app.add_subcommand("average", "closed-form and simulated average search probability"), false);
  add_common(app.add_subcommand("spectrum", "augmented-matrix spectrum and walk eigenphases"), false);
  add_common(app.add_subcommand("sweep", "closed-form totals over a family"), true);
  add_common(app.add_subcommand("bounds", "eigenvalue and eigenvector bounds for distance-regular graphs"), false);
  add_common(app.add_subcommand("check-dr", "intersection array of a graph, or why it has none"), false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (T < 1) throw ParameterError("--T must be at least 1");
    cfg.T = static_cast<std::size_t>(T);
    if (vertex) {
      if (*vertex < 0) throw ParameterError("--vertex must be non-negative");
      cfg.vertex = static_cast<std::size_t>(*vertex);
    }
    if (!param_text.empty()) cfg.param = parse_param(param_text);
    if (!params_text.empty()) cfg.params = parse_params(params_text);
    if (cfg.command == "sweep" && !params_text.empty() && cfg.params.empty())
      throw ParameterError("sweep needs a non-empty --params list");
    return dispatch(cfg, out, err);
  } catch (const ExitWith& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const HypothesisError& e) {
    err << "hypothesis failed: " << e.hypothesis() << ": " << e.what() << '\n';
    return kHypothesisFailure;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace dtqw::cli
