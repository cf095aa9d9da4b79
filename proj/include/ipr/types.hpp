#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace ipr {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Signals a numerically degenerate linear system (factorization breakdown
/// or reciprocal condition estimate below 1e-14). The solver maps it to the
/// degenerate_kkt termination status.
class DegenerateSystemError : public std::runtime_error {
 public:
  explicit DegenerateSystemError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Signals that the backtracking line search exhausted its step-size grid.
/// The solver maps it to the small_step termination status.
class SmallStepError : public std::runtime_error {
 public:
  explicit SmallStepError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Signals that the barrier guard hit its loop cap while the merit value was
/// still above tolerance. Never observed on the built-in problems.
class GuardStallError : public std::runtime_error {
 public:
  explicit GuardStallError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Structured-text parse failure with file/line diagnostics.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, int line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
        line_number(line) {}
  int line_number;
};

}  // namespace ipr
