#pragma once

#include <stdexcept>
#include <string>

namespace obstructor {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Not enough certified digits to answer, or a value is zero at the current precision.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// Division by a value that is zero (or zero at precision).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A mathematical precondition of an operation does not hold.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// Hensel/Newton lifting criterion is not met at the given approximation.
class CriterionError : public Error {
 public:
  using Error::Error;
};

// A search reached its depth cap without a decision.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NoUsableRepresentative : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace obstructor
