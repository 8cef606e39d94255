#pragma once

#include <stdexcept>
#include <string>

namespace curkit {

/// Base class for all curkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration: bad argument combinations, out-of-range parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unusable input data (parse failures, shape mismatches,
/// unrecoverable gaps).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Numerical preconditions violated at run time (mu bound, unreachable
/// selection count in strict mode).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace curkit
