#pragma once

#include <stdexcept>
#include <string>

namespace psda {

/// Base class for every error thrown by this library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter lies outside the family's open parameter domain.
class domain_error : public error {
 public:
  using error::error;
};

/// A series value cannot be certified (no usable ratio bound, or the
/// dominating ratio never drops below 1).
class convergence_error : public error {
 public:
  using error::error;
};

/// A certified truncation could not reach the requested tail tolerance
/// within the term cap.
class truncation_error : public error {
 public:
  using error::error;
};

/// The size-biased transform is undefined because h'(theta) == 0.
class degenerate_error : public error {
 public:
  using error::error;
};

/// A moment-matching system has no valid solution (e.g. variance does not
/// exceed the mean, so no negative binomial matches both moments).
class infeasible_error : public error {
 public:
  using error::error;
};

/// The requested closed form does not apply to this input (wrong family
/// mix, parameters outside the closed form's validity region, ...).
class unsupported_error : public error {
 public:
  using error::error;
};

/// A convolution or validation run would exceed the support cap.
class capacity_error : public error {
 public:
  using error::error;
};

/// Scenario file is malformed. Carries the 1-based offending line.
class parse_error : public error {
 public:
  parse_error(const std::string& what, int line)
      : error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace psda
