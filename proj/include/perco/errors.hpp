#pragma once

#include <stdexcept>
#include <string>

namespace perco {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A ball, enumeration or radius exceeds a configured size limit.
class SizeError : public Error {
 public:
  using Error::Error;
};

// A numeric argument lies outside its mathematical domain (p not in [0,1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The requested estimator is not meaningful for the graph or model.
class ModelError : public Error {
 public:
  using Error::Error;
};

// A property or rerooting was evaluated on the wrong kind of state.
class UsageError : public Error {
 public:
  using Error::Error;
};

// The ball radius is too small for the requested window or rerooting.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace perco
