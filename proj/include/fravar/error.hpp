#pragma once

#include <stdexcept>
#include <string>

namespace fravar {

/// Adaptive quadrature or iteration hit its refinement cap without meeting tolerance.
struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Gamma evaluated at a non-positive integer.
struct PoleError : std::domain_error {
  explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

/// Lexical or syntax error in expression text, with 1-based position.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int line_, int column_)
      : std::runtime_error(what + " (line " + std::to_string(line_) + ", column " +
                           std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
  int line;
  int column;
};

/// Unbound symbol, division by zero, or non-finite value during evaluation.
struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

/// Least-squares system has (numerically) deficient column rank.
struct RankDeficientError : std::runtime_error {
  explicit RankDeficientError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fravar
