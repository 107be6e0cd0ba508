#ifndef ORBITBIF_ERRORS_HPP
#define ORBITBIF_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace orbitbif {

// Argument outside the supported evaluation domain (x < 0, order too large, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// An iteration failed to reach its tolerance within its budget.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// The enumerated part of the Laplacian spectrum is too short for the request.
class InsufficientCutoffError : public std::runtime_error {
 public:
  explicit InsufficientCutoffError(const std::string& msg) : std::runtime_error(msg) {}
};

// A value claimed to be a Neumann eigenvalue matches no computed root.
class NotAnEigenvalueError : public std::invalid_argument {
 public:
  explicit NotAnEigenvalueError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Input matrix fails the symmetry tolerance.
class AsymmetryError : public std::invalid_argument {
 public:
  explicit AsymmetryError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Two independent routes to the same verdict disagreed; an implementation bug.
class InternalConsistencyError : public std::logic_error {
 public:
  explicit InternalConsistencyError(const std::string& msg) : std::logic_error(msg) {}
};

// Malformed or contradictory run configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A bordered linear solve hit a (near-)singular matrix; carries the smallest
// singular values for diagnostics.
class SingularSystemError : public ConvergenceError {
 public:
  SingularSystemError(const std::string& msg, std::vector<double> smallest)
      : ConvergenceError(msg), smallest_singular_values(std::move(smallest)) {}
  std::vector<double> smallest_singular_values;
};

}  // namespace orbitbif

#endif
