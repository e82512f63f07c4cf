#pragma once

#include <stdexcept>
#include <string>

namespace emsr {

/// Malformed configuration, bad CLI input, wrong protocol wiring. CLI exit 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature (or another iteration) failed to reach tolerance. Carries the
/// best estimate reached. CLI exit 4.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}
  double estimate() const { return estimate_; }
  double error() const { return error_; }

 private:
  double estimate_;
  double error_;
};

// Physical-domain violations (d = 0, T <= 0, ...) throw std::domain_error.
// CLI exit 3.

}  // namespace emsr
