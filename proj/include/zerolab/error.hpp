#pragma once

#include <stdexcept>
#include <string>

namespace zerolab {

/// Argument outside the region where an evaluator is valid.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid window or configuration parameter.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Caller violated an operation's precondition (e.g. no sign change in a bracket).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Input hits an exact degenerate case; the caller is expected to perturb and retry.
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zerolab
