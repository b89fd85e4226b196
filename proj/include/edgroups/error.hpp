#pragma once

#include <stdexcept>
#include <string>

namespace edg {

// Every failure raised by the library derives from Error. The CLI maps the
// concrete type onto an exit code, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Precondition on the input violated (non-symmetric, wrong shape, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public Error {
 public:
  using Error::Error;
};

// Input is not general enough: repeated eigenvalues, vanishing extreme
// coefficients, ambiguous branch selection.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class ConditioningError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// A mathematical guarantee failed to hold numerically.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace edg
