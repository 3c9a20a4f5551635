#pragma once

#include <stdexcept>
#include <string>

namespace hardedge {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Working precision too low for the requested evaluation (e.g. a moment
/// matrix that fails Cholesky). Carries a suggested bit count.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(const std::string& what, int suggested_bits)
      : std::runtime_error(what + " (retry with at least " + std::to_string(suggested_bits) + " bits)"),
        suggested_bits_(suggested_bits) {}
  int suggested_bits() const noexcept { return suggested_bits_; }

 private:
  int suggested_bits_;
};

/// An iterative kernel (eigensolver, continued fraction) did not converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nyström discretization violated the contraction property.
class DiscretizationError : public std::runtime_error {
 public:
  DiscretizationError(const std::string& what, int suggested_points)
      : std::runtime_error(what + " (retry with m >= " + std::to_string(suggested_points) + ")"),
        suggested_points_(suggested_points) {}
  int suggested_points() const noexcept { return suggested_points_; }

 private:
  int suggested_points_;
};

/// Trajectory hit one of the singular manifolds W in {0, 1, t}, or a
/// denominator of an algebraic map vanished.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(const std::string& what, double location)
      : std::runtime_error(what + " at t=" + std::to_string(location)), location_(location) {}
  double location() const noexcept { return location_; }

 private:
  double location_;
};

}  // namespace hardedge
