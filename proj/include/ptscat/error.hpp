#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace ptscat {

/// Input outside an operation's domain of validity.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure: integrator blow-up, non-finite state, failed refinement.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what,
                        double x = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(what), x_(x) {}

  /// Position along the integration axis where the failure happened (NaN if n/a).
  double location() const noexcept { return x_; }

 private:
  double x_;
};

/// File-system failure, message carries the offending path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ptscat
