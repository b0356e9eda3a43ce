#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arbor {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: out-of-range vertex, bad file, parameter outside its domain.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The requested object cannot exist (odd nD for a regular graph, and so on).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// An internal postcondition failed. Reaching this is a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Iterative eigensolver ran out of iterations; carries its best estimate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double estimate, double residual)
      : Error(what), estimate_(estimate), residual_(residual) {}

  double estimate() const noexcept { return estimate_; }
  double residual() const noexcept { return residual_; }

 private:
  double estimate_;
  double residual_;
};

/// Backtracking search gave up or proved there is no embedding.
class SearchFailure : public Error {
 public:
  SearchFailure(const std::string& what, std::size_t deepest_partial, long long backtracks,
                bool exhausted)
      : Error(what),
        deepest_partial_(deepest_partial),
        backtracks_(backtracks),
        exhausted_(exhausted) {}

  /// Largest number of guest vertices placed simultaneously during the search.
  std::size_t deepest_partial() const noexcept { return deepest_partial_; }
  long long backtracks() const noexcept { return backtracks_; }
  /// True only when the whole search space was explored: no embedding exists.
  bool exhausted() const noexcept { return exhausted_; }

 private:
  std::size_t deepest_partial_;
  long long backtracks_;
  bool exhausted_;
};

}  // namespace arbor
