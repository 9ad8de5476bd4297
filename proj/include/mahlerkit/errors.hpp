#pragma once

#include <stdexcept>
#include <string>

#include "mahlerkit/report.hpp"

namespace mahlerkit {

// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ZeroDenominator : public Error {
 public:
  ZeroDenominator() : Error("zero denominator") {}
};

class ZeroVector : public Error {
 public:
  ZeroVector() : Error("projective point with all coordinates zero") {}
};

class DegenerateExponent : public Error {
 public:
  using Error::Error;
};

class MissingConstant : public Error {
 public:
  explicit MissingConstant(const std::string& name)
      : Error("missing constant '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class RankMismatch : public Error {
 public:
  RankMismatch(long declared, long actual)
      : Error("declared rank " + std::to_string(declared) + " but exact rank is " +
              std::to_string(actual)),
        declared_(declared),
        actual_(actual) {}
  long declared() const { return declared_; }
  long actual() const { return actual_; }

 private:
  long declared_;
  long actual_;
};

// Raised when a stated hypothesis does not hold; carries the failing row.
class HypothesisViolation : public Error {
 public:
  explicit HypothesisViolation(CheckRow row)
      : Error("hypothesis violated: " + row.name + " (" + row.lhs + " " + row.relation + " " +
              row.rhs + ")"),
        row_(std::move(row)) {}
  const CheckRow& row() const { return row_; }

 private:
  CheckRow row_;
};

class PrecisionBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class RootIsolationFailure : public Error {
 public:
  using Error::Error;
};

class QuadratureDivergence : public Error {
 public:
  using Error::Error;
};

class RationalDetected : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace mahlerkit
