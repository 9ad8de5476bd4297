#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace mahlerkit {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p", "p/q", decimals such as "-0.75" and "19.183", and
// scientific notation "1e-3". The result is exact and canonical.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

// Canonical exact form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

// Nearest integer; exact halves go to the even neighbour.
Integer round_half_even(const Rational& value);

Integer factorial(unsigned long n);
Integer binomial(const Integer& n, unsigned long k);
Integer pow(const Integer& base, unsigned long exponent);
Rational pow(const Rational& base, long exponent);

// Largest k >= 0 with k^n <= value. value must be nonnegative.
Integer integer_root(const Integer& value, unsigned long n);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

long to_long(const Integer& value);

// Reads every coefficient of an exact double into a Rational.
Rational rational_from_double(double value);
Rational rational_from_long_double(long double value);

}  // namespace mahlerkit
