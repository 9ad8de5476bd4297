#include "mahlerkit/exact.hpp"

#include <cctype>
#include <climits>
#include <cmath>

#include "mahlerkit/errors.hpp"

namespace mahlerkit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_signed_digits(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("not an integer: '" + std::string(whole) + "'");
  Integer value(std::string(s), 10);
  return negative ? Integer(-value) : value;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  const auto s = trim(text);
  return parse_signed_digits(s, text);
}

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  if (s.empty()) throw ParseError("empty number");

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_signed_digits(trim(s.substr(0, slash)), text);
    const Integer den = parse_signed_digits(trim(s.substr(slash + 1)), text);
    if (den == 0) throw ZeroDenominator();
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    const Integer ex = parse_signed_digits(s.substr(e + 1), text);
    if (!ex.fits_slong_p()) throw ParseError("exponent out of range: '" + std::string(text) + "'");
    exponent = ex.get_si();
    s = s.substr(0, e);
  }

  std::string digits;
  long frac_digits = 0;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto int_part = s.substr(0, dot);
    const auto frac_part = s.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty())) {
      throw ParseError("not a number: '" + std::string(text) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    frac_digits = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) throw ParseError("not a number: '" + std::string(text) + "'");
    digits = std::string(s);
  }

  Rational q{Integer(digits, 10)};
  const long shift = exponent - frac_digits;
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift >= 0) {
    q *= ten_pow;
  } else {
    q /= ten_pow;
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

std::string to_string(const Integer& value) { return value.get_str(10); }

Integer floor(const Rational& value) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Integer ceil(const Rational& value) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Integer round_half_even(const Rational& value) {
  const Integer f = floor(value);
  const Rational frac = value - f;
  const Rational half(1, 2);
  if (frac < half) return f;
  if (frac > half) return f + 1;
  return mpz_even_p(f.get_mpz_t()) ? f : Integer(f + 1);
}

Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Integer binomial(const Integer& n, unsigned long k) {
  Integer out;
  mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), k);
  return out;
}

Integer pow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational pow(const Rational& base, long exponent) {
  const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  Integer num = pow(Integer(base.get_num()), e);
  Integer den = pow(Integer(base.get_den()), e);
  if (exponent < 0) {
    if (num == 0) throw ZeroDenominator();
    std::swap(num, den);
  }
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Integer integer_root(const Integer& value, unsigned long n) {
  if (value < 0) throw DomainError("integer_root of a negative number");
  Integer out;
  mpz_root(out.get_mpz_t(), value.get_mpz_t(), n);
  return out;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

long to_long(const Integer& value) {
  if (!value.fits_slong_p()) throw DomainError("integer " + value.get_str() + " does not fit in a long");
  return value.get_si();
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite double");
  Rational out;
  mpq_set_d(out.get_mpq_t(), value);
  return out;
}

Rational rational_from_long_double(long double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite long double");
  // Split into two exactly representable doubles-worth of mantissa.
  int exp = 0;
  long double mant = std::frexp(value, &exp);
  Rational out(0);
  for (int chunk = 0; chunk < 3 && mant != 0.0L; ++chunk) {
    mant = std::ldexp(mant, 32);
    const long double whole = std::trunc(mant);
    out += Rational(Integer(static_cast<long>(whole)), 1) / Rational(pow(Integer(2), 32UL * (chunk + 1)));
    mant -= whole;
  }
  if (exp >= 0) {
    out *= Rational(pow(Integer(2), static_cast<unsigned long>(exp)));
  } else {
    out /= Rational(pow(Integer(2), static_cast<unsigned long>(-exp)));
  }
  out.canonicalize();
  return out;
}

}  // namespace mahlerkit
