#pragma once

#include "mahlerkit/algnum/polynomial.hpp"
#include "mahlerkit/algnum/roots.hpp"
#include "mahlerkit/ball.hpp"

namespace mahlerkit::algnum {

// Exact for degree <= 3 (no rational root, or a non-square discriminant).
// Throws DomainError for higher degree.
bool irreducible_over_rationals(const IntPolynomial& f);

// An algebraic number: its minimal polynomial plus a ball that isolates
// exactly one of its roots.
class AlgebraicNumber {
 public:
  // Checks that `selector` isolates exactly one root and, up to degree 3,
  // that `minpoly` is irreducible. Throws DomainError otherwise.
  AlgebraicNumber(IntPolynomial minpoly, const ComplexBall& selector);

  static AlgebraicNumber from_rational(const Rational& value);
  // The root of `minpoly` nearest to re + i*im.
  static AlgebraicNumber nearest_root(IntPolynomial minpoly, double re, double im = 0.0);

  const IntPolynomial& minpoly() const { return minpoly_; }
  const ComplexBall& selector() const { return selector_; }
  int degree() const { return minpoly_.degree(); }

  // Certified enclosure of the number whose radius shrinks with `prec`.
  ComplexBall enclosure(Precision prec) const;

 private:
  IntPolynomial minpoly_;
  ComplexBall selector_;
};

// (1/d) log M(minpoly).
RealBall weil_height(const AlgebraicNumber& alpha, Precision prec);

// A logarithm of alpha: principal branch plus 2*pi*i*branch.
ComplexBall log(const AlgebraicNumber& alpha, Precision prec, long branch = 0);

}  // namespace mahlerkit::algnum
