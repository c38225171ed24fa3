#pragma once

#include <stdexcept>
#include <string>

namespace dw {

/// Invalid user input: configuration, expressions, resolution rules.
/// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine could not deliver its contract (eigensolver,
/// quadrature, extrapolation). The CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dw
