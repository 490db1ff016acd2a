#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dtqw/drg.hpp"

namespace dtqw::report {

/// %.12g, with negative zero printed as 0.
std::string number(double x);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::string_view command, const std::vector<std::string>& header);

  void row(const std::vector<std::string>& cells);
  void comment(std::string_view text);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

/// Self-contained SVG line chart of |total - 1/4| against k, log-scaled y.
std::string sweep_chart_svg(const SweepTable& table);

}  // namespace dtqw::report
