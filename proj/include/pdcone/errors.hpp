#pragma once

#include <stdexcept>
#include <string>

namespace pdcone {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes of two operands do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A scalar function was asked to act outside its domain (e.g. log of a
// non-positive eigenvalue), or a matrix failed a Hermitian/PD invariant.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// An operation's stated hypotheses do not hold for its inputs.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A computed quantity violated a mathematical guarantee by more than
// roundoff (e.g. a divergence evaluating clearly negative).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace pdcone
