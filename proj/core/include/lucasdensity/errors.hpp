#pragma once

#include <stdexcept>
#include <string>

namespace lucasdensity {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The caller supplied something the mathematics does not accept
/// (reducible polynomial, torsion root quotient, bad argument, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A consistency check inside the library failed. These signal bugs or
/// violated internal invariants, never bad user input.
class InternalError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

class ReducibleError : public InputError {
 public:
  using InputError::InputError;
};

class TorsionError : public InputError {
 public:
  using InputError::InputError;
};

class ZeroParameterError : public InputError {
 public:
  using InputError::InputError;
};

class NormError : public InputError {
 public:
  using InputError::InputError;
};

class DiscMismatchError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DivisionByZeroError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class HypothesisError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class CaseError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class LimitError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class PrecisionExhaustedError : public InternalError {
 public:
  using InternalError::InternalError;
};

class DegenerateError : public InternalError {
 public:
  using InternalError::InternalError;
};

class ShapeError : public InternalError {
 public:
  using InternalError::InternalError;
};

class OracleMismatchError : public InternalError {
 public:
  using InternalError::InternalError;
};

class UnreachableCaseError : public InternalError {
 public:
  using InternalError::InternalError;
};

}  // namespace lucasdensity
