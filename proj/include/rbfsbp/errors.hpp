#pragma once

#include <stdexcept>
#include <string>

namespace rbfsbp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad size, negative radius, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// The RBF saddle-point system could not be factorized.
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

/// Configuration rejected before any computation started.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The state became non-finite during time integration.
class NonFiniteStateError : public Error {
 public:
  NonFiniteStateError(const std::string& what, int stage)
      : Error(what), stage_(stage) {}
  int stage() const { return stage_; }

 private:
  int stage_;
};

}  // namespace rbfsbp
