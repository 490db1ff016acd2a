#include <charconv>
#include <string>

#include "dtqw/graph.hpp"

namespace dtqw {

namespace {

std::vector<std::int64_t> parse_list(std::string_view text, std::string_view which) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
      throw ParseError(0, "intersection array: bad " + std::string(which) + " entry '" +
                              std::string(item) + "'");
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Outcome<IntersectionArray> IntersectionArray::validate(std::vector<std::int64_t> b,
                                                       std::vector<std::int64_t> c) {
  if (b.empty()) return Refusal{"diameter", "need d >= 1 (empty b list)", {}, {}};
  if (b.size() != c.size())
    return Refusal{"lengths",
                   "b has " + std::to_string(b.size()) + " entries but c has " +
                       std::to_string(c.size()),
                   {}, {}};
  const std::size_t d = b.size();
  for (std::size_t i = 0; i < d; ++i) {
    if (b[i] <= 0) return Refusal{"positivity", "b_" + std::to_string(i) + " must be positive", {}, {}};
    if (c[i] <= 0)
      return Refusal{"positivity", "c_" + std::to_string(i + 1) + " must be positive", {}, {}};
  }
  if (c[0] != 1) return Refusal{"c1", "c_1 must equal 1, got " + std::to_string(c[0]), {}, {}};

  IntersectionArray arr;
  arr.b_ = std::move(b);
  arr.c_ = std::move(c);
  const std::int64_t k = arr.b_[0];
  arr.k_.push_back(1);
  for (std::size_t i = 0; i < d; ++i) {
    std::int64_t numerator = 0;
    if (__builtin_mul_overflow(arr.b_[i], arr.k_[i], &numerator))
      return Refusal{"k_integrality", "k_" + std::to_string(i + 1) + " overflows", {}, {}};
    if (numerator % arr.c_[i] != 0)
      return Refusal{"k_integrality",
                     "k_" + std::to_string(i + 1) + " = " + std::to_string(numerator) + "/" +
                         std::to_string(arr.c_[i]) + " is not integral",
                     {}, {}};
    arr.k_.push_back(numerator / arr.c_[i]);
  }
  for (std::size_t i = 0; i <= d; ++i) {
    const std::int64_t ai = k - arr.b(i) - arr.c(i);
    if (ai < 0)
      return Refusal{"a_nonnegative",
                     "a_" + std::to_string(i) + " = k - b_i - c_i = " + std::to_string(ai) +
                         " is negative",
                     {}, {}};
    arr.a_.push_back(ai);
  }
  // a_0 = k - b_0 - c_0 = 0 holds by construction.
  for (auto ki : arr.k_) arr.n_ += ki;
  return arr;
}

Outcome<IntersectionArray> IntersectionArray::parse(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '{')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '}' || text.back() == '\n'))
    text.remove_suffix(1);
  const std::size_t semi = text.find(';');
  if (semi == std::string_view::npos || text.find(';', semi + 1) != std::string_view::npos)
    throw ParseError(0, "intersection array must look like 'b0,...,b{d-1};c1,...,cd'");
  return validate(parse_list(text.substr(0, semi), "b"), parse_list(text.substr(semi + 1), "c"));
}

std::string IntersectionArray::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < b_.size(); ++i) out += (i ? "," : "") + std::to_string(b_[i]);
  out += ';';
  for (std::size_t i = 0; i < c_.size(); ++i) out += (i ? "," : "") + std::to_string(c_[i]);
  return out + "}";
}

}  // namespace dtqw
