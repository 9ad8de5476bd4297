#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mahlerkit/ball.hpp"
#include "mahlerkit/exact.hpp"

namespace mahlerkit::matrixlab {

// Positive real of the form prod base_k^exponent_k with rational bases and
// exponents. Comparisons against rationals and the integer part are exact:
// both sides are raised to the common denominator of the exponents.
class PowerProduct {
 public:
  PowerProduct() = default;
  explicit PowerProduct(const Rational& value) { times(value); }

  // Throws DomainError for a nonpositive base.
  PowerProduct& times(const Rational& base, const Rational& exponent = 1);
  PowerProduct& times(const PowerProduct& other);
  // Every exponent multiplied by k.
  PowerProduct raised(const Rational& k) const;

  // lcm of the exponent denominators.
  unsigned long common_denominator() const;
  // value^common_denominator(), exact.
  Rational integral_power() const;

  // sign(value - q).
  int compare(const Rational& q) const;
  Integer floor() const;

  RealBall log(Precision prec) const;
  RealBall value(Precision prec) const { return exp(log(prec)); }

  std::string to_string() const;

 private:
  std::vector<std::pair<Rational, Rational>> factors_;
};

}  // namespace mahlerkit::matrixlab
