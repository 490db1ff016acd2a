#include "dtqw/report_writer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace dtqw::report {

std::string number(double x) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

std::string quoted(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

CsvWriter::CsvWriter(std::ostream& out, std::string_view command, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  out_ << "# schema: " << command << "-v1\n";
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < columns_; ++i) {
    if (i) out_ << ',';
    if (i < cells.size()) out_ << quoted(cells[i]);
  }
  out_ << '\n';
}

void CsvWriter::comment(std::string_view text) { out_ << "# " << text << '\n'; }

std::string sweep_chart_svg(const SweepTable& table) {
  constexpr double width = 640, height = 400, left = 70, right = 20, top = 40, bottom = 50;
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : table.rows)
    if (!r.skipped) pts.emplace_back(static_cast<double>(r.k), std::log10(std::max(r.deviation, 1e-16)));

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"14\">" << escape_xml(table.family) << ": |total - 1/4| vs k</text>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
      << height - bottom << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
      << "\" stroke=\"black\"/>\n";
  if (!pts.empty()) {
    double kmin = pts[0].first, kmax = pts[0].first;
    double ymin = pts[0].second, ymax = pts[0].second;
    for (const auto& p : pts) {
      kmin = std::min(kmin, p.first);
      kmax = std::max(kmax, p.first);
      ymin = std::min(ymin, p.second);
      ymax = std::max(ymax, p.second);
    }
    ymin = std::floor(ymin);
    ymax = std::ceil(ymax);
    if (ymax <= ymin) ymax = ymin + 1;
    if (kmax <= kmin) kmax = kmin + 1;
    auto sx = [&](double k) { return left + (k - kmin) / (kmax - kmin) * (width - left - right); };
    auto sy = [&](double y) { return height - bottom - (y - ymin) / (ymax - ymin) * (height - top - bottom); };

    for (int e = static_cast<int>(ymin); e <= static_cast<int>(ymax); ++e) {
      svg << "<line x1=\"" << left - 4 << "\" y1=\"" << fixed(sy(e), 2) << "\" x2=\"" << width - right
          << "\" y2=\"" << fixed(sy(e), 2) << "\" stroke=\"#dddddd\"/>\n";
      svg << "<text x=\"" << left - 8 << "\" y=\"" << fixed(sy(e) + 4, 2)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << e << "</text>\n";
    }
    for (const auto& p : pts)
      svg << "<text x=\"" << fixed(sx(p.first), 2) << "\" y=\"" << height - bottom + 16
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << number(p.first)
          << "</text>\n";
    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      svg << (i ? " " : "") << fixed(sx(pts[i].first), 2) << ',' << fixed(sy(pts[i].second), 2);
    svg << "\"/>\n";
    for (const auto& p : pts)
      svg << "<circle cx=\"" << fixed(sx(p.first), 2) << "\" cy=\"" << fixed(sy(p.second), 2)
          << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  }
  svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">k</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace dtqw::report
