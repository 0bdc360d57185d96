#pragma once

#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace shabound {

using Int = mpz_class;
using Rat = mpq_class;

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied something that violates an operation's precondition.
/// `field` names the offending input when known.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A factorization needed by the computation could not be completed within
/// the configured effort budget.
class IncompleteFactorization : public Error {
 public:
  explicit IncompleteFactorization(Int cofactor)
      : Error("incomplete factorization: unfactored cofactor " + cofactor.get_str()),
        cofactor_(std::move(cofactor)) {}
  const Int& cofactor() const noexcept { return cofactor_; }

 private:
  Int cofactor_;
};

/// Input exceeds the deterministic working range (primality beyond 128 bits).
class RangeError : public Error {
 public:
  using Error::Error;
};

class SingularModel : public Error {
 public:
  SingularModel() : Error("singular Weierstrass model: discriminant is zero") {}
};

/// A bound formula was requested strictly for a field outside its hypotheses.
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

/// The two independent S1/S2 classifiers disagreed. Always a bug.
class ClassifierDisagreement : public Error {
 public:
  using Error::Error;
};

/// A forced S2 prime has no root of the controlling factor polynomial.
class UnreachableCusp : public Error {
 public:
  using Error::Error;
};

/// The family member is singular at this parameter.
class Degenerate : public Error {
 public:
  using Error::Error;
};

}  // namespace shabound
