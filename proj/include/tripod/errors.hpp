#pragma once

#include <stdexcept>
#include <string>

namespace tripod {

/// Rejected input: bad parameters, malformed config, unknown flags.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver could not deliver a result meeting its contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tripod
