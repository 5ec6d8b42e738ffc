#pragma once

#include <stdexcept>
#include <string>

namespace mdsym {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Constant term of a series is not a unit.
class NotInvertible : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of an operation (non-coprime pair, pq = 0, p <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Some tail of a continued fraction evaluates with vanishing denominator.
class DivisionByZeroTail : public Error {
 public:
  using Error::Error;
};

// Index or split for a continued-fraction move is invalid.
class BadMove : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

class NotShuffled : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

}  // namespace mdsym
