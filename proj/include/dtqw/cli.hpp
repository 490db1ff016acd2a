#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dtqw/drg.hpp"

namespace dtqw::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kToleranceBreach = 2,
  kHypothesisFailure = 3,
  kNotDistanceRegular = 4,
  kNumericalFailure = 5,
};

struct RunConfig {
  std::string command;
  std::string family;
  std::vector<long> param;                 // --param, e.g. "3" or "2:3"
  std::vector<std::vector<long>> params;   // --params, e.g. "3,4,5" or "2:3,2:4"
  std::string edges;
  std::string array;
  std::optional<std::size_t> vertex;
  std::size_t T = 200000;
  double tol = 5e-3;
  std::string out;
  bool svg = false;
  bool check = false;
};

/// Entry point shared by the executable and the tests; `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "3", "2:3" or "2,3" into integers; throws ParameterError.
std::vector<long> parse_param(const std::string& text);
/// Parses "3,4,5" or "2:3,2:4"; throws ParameterError.
std::vector<std::vector<long>> parse_params(const std::string& text);

}  // namespace dtqw::cli
