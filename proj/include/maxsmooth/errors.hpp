#pragma once

#include <stdexcept>
#include <string>

namespace maxsmooth {

// Caller supplied something malformed (bad bracket, empty schedule, unknown name).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Evaluation point outside the function's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A member cannot provide the requested derivative (order not implemented,
// or one-sided values disagree at a breakpoint).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point lies in (0, 2^-(kmax+1)): the counterexample was not materialized that far.
class ResolutionError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Problem-level precondition violated (unstable A, non-square transfer, not passive).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical breakdown: singular systems, failure to bracket, etc.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Transfer function evaluated on (or numerically at) a pole.
class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace maxsmooth
