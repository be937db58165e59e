#pragma once

#include <stdexcept>
#include <string>

namespace loewner {

// Point outside the domain a type or operation requires.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed driver, field, grid or scenario description.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The integrator could not complete (step limit, non-finite state).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace loewner
