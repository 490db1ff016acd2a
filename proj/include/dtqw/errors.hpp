#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace dtqw {

/// Invalid construction parameters (family arguments, size caps, malformed vectors).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A graph would exceed the dense size cap (DTQW_MAX_N, default 4096).
class SizeCapError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Malformed textual input; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A structural hypothesis of a computation does not hold for the input
/// (regularity, connectivity, 2-connectivity, equitability...).
class HypothesisError : public std::runtime_error {
 public:
  HypothesisError(std::string hypothesis, const std::string& detail)
      : std::runtime_error(hypothesis + ": " + detail), hypothesis_(std::move(hypothesis)) {}
  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

/// Numerical failure: non-convergence, singular formula, grouping inconsistency.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A normal negative outcome of a check, with an optional witness.
struct Refusal {
  std::string condition;
  std::string detail;
  std::optional<std::size_t> vertex;
  std::optional<std::size_t> cell;

  std::string message() const { return condition + ": " + detail; }
};

/// Either a value or a Refusal.
template <class T>
class Outcome {
 public:
  Outcome(T value) : state_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Outcome(Refusal refusal) : state_(std::move(refusal)) {}  // NOLINT(google-explicit-constructor)

  bool ok() const noexcept { return state_.index() == 0; }
  explicit operator bool() const noexcept { return ok(); }

  const T& value() const& {
    if (!ok()) throw std::logic_error("Outcome::value on refusal: " + refusal().message());
    return std::get<0>(state_);
  }
  T&& value() && {
    if (!ok()) throw std::logic_error("Outcome::value on refusal: " + refusal().message());
    return std::get<0>(std::move(state_));
  }
  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

  const Refusal& refusal() const {
    if (ok()) throw std::logic_error("Outcome::refusal on value");
    return std::get<1>(state_);
  }

 private:
  std::variant<T, Refusal> state_;
};

}  // namespace dtqw
