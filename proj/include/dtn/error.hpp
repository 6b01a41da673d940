#pragma once

#include <stdexcept>
#include <string>

namespace dtn {

// Invalid or out-of-range configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated an operation's precondition (empty input, n < 2, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Degenerate statistical or value-scale input (zero variances, worst == best).
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A simulation could not complete, e.g. a routing loop exhausted the step budget.
class SimulationFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dtn
