#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace copoun {

/// Argument outside the mathematical domain of a function or distribution.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Objective or likelihood produced a non-finite value at a probe point.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, std::vector<double> point)
      : std::runtime_error(what), point_(std::move(point)) {}

  const std::vector<double>& point() const noexcept { return point_; }

 private:
  std::vector<double> point_;
};

/// Cholesky pivot was non-positive.
class NotPositiveDefiniteError : public std::runtime_error {
 public:
  NotPositiveDefiniteError()
      : std::runtime_error("information matrix not positive definite") {}
};

/// Estimation cannot proceed for this data (degenerate or infeasible input).
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data; `line` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace copoun
