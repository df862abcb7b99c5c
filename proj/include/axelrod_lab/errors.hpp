#pragma once

#include <stdexcept>

namespace axelrod {

/// Invalid model parameters (ring length, opinion counts, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An event was applied to a state other than the one it was drawn against.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Incrementally maintained spins disagree with the culture state. Always a bug.
class CouplingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Operation only defined for a subset of configurations (typically F = 2).
class UnsupportedConfiguration : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Caller violated a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An observer threw while a run was in progress.
class ObserverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace axelrod
