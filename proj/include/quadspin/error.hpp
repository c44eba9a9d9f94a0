#pragma once

#include <stdexcept>
#include <string>

namespace quadspin {

// Bad input: malformed configuration, mismatched dimensions, out-of-range
// parameters. The CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical invariant was violated (trace drift, negative eigenvalue,
// Robertson bound, ...). `magnitude` carries the offending value. The CLI maps
// this to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double magnitude)
      : std::runtime_error(what), magnitude_(magnitude) {}
  double magnitude() const noexcept { return magnitude_; }

 private:
  double magnitude_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace quadspin
