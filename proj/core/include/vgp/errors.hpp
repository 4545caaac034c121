#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vgp {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Cholesky factorization hit a non-positive pivot.  `pivot` is the
// zero-based row at which the factorization failed; `context` names the
// matrix for the message ("matrix" when empty).
class NotPositiveDefinite : public Error {
 public:
  NotPositiveDefinite(std::size_t pivot, double value, const std::string& context = "")
      : Error((context.empty() ? std::string("matrix") : context) +
              " not positive definite at pivot " + std::to_string(pivot) +
              " (value " + std::to_string(value) + ")"),
        pivot_(pivot),
        value_(value) {}

  std::size_t pivot() const { return pivot_; }
  double pivot_value() const { return value_; }

 private:
  std::size_t pivot_;
  double value_;
};

// A routine was asked to densely materialize a problem larger than its
// guard threshold allows.
class SizeGuardError : public Error {
 public:
  SizeGuardError(const std::string& what, std::size_t n, std::size_t limit)
      : Error(what + ": size " + std::to_string(n) + " exceeds limit " +
              std::to_string(limit)) {}
};

// Sample statistics are degenerate (zero variance, too few points, ...).
class DegenerateSample : public Error {
 public:
  explicit DegenerateSample(const std::string& msg) : Error(msg) {}
};

// Bad user-facing input: config files, CSV files, CLI arguments.
class InputError : public Error {
 public:
  explicit InputError(const std::string& msg) : Error(msg) {}
};

}  // namespace vgp
