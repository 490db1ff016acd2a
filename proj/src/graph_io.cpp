#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>

#include "dtqw/graph.hpp"

namespace dtqw {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

std::size_t to_index(std::string_view token, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(token) + "'");
  return value;
}

}  // namespace

Graph parse_edge_list(std::istream& in, std::string label) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    if (!n) {
      if (tok.size() != 1) throw ParseError(line_no, "first line must hold the vertex count only");
      n = to_index(tok[0], line_no);
      if (*n > vertex_cap())
        throw ParseError(line_no, "vertex count " + std::to_string(*n) + " exceeds the size cap " +
                                      std::to_string(vertex_cap()));
      continue;
    }
    if (tok.size() != 2) throw ParseError(line_no, "edge lines hold exactly two labels");
    const Vertex u = to_index(tok[0], line_no);
    const Vertex v = to_index(tok[1], line_no);
    if (u >= *n || v >= *n)
      throw ParseError(line_no, "label out of range 0.." + std::to_string(*n - 1));
    if (u == v) throw ParseError(line_no, "loop at vertex " + std::to_string(u) + " (graph must be simple)");
    const Edge key{std::min(u, v), std::max(u, v)};
    if (!seen.insert(key).second)
      throw ParseError(line_no, "edge {" + std::to_string(key.first) + "," +
                                    std::to_string(key.second) + "} listed twice");
    edges.push_back(key);
  }
  if (!n) throw ParseError(line_no, "missing vertex count");
  return Graph(*n, edges, std::move(label));
}

Graph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_edge_list(in, path);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.order() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace dtqw
