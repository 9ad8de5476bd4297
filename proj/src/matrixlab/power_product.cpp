#include "mahlerkit/matrixlab/power_product.hpp"

#include "mahlerkit/errors.hpp"

namespace mahlerkit::matrixlab {

PowerProduct& PowerProduct::times(const Rational& base, const Rational& exponent) {
  if (base <= 0) throw DomainError("power product bases must be positive");
  if (exponent != 0 && base != 1) factors_.emplace_back(base, exponent);
  return *this;
}

PowerProduct& PowerProduct::times(const PowerProduct& other) {
  for (const auto& f : other.factors_) factors_.push_back(f);
  return *this;
}

PowerProduct PowerProduct::raised(const Rational& k) const {
  PowerProduct out;
  for (const auto& [base, exponent] : factors_) out.times(base, exponent * k);
  return out;
}

unsigned long PowerProduct::common_denominator() const {
  Integer out = 1;
  for (const auto& f : factors_) out = lcm(out, Integer(f.second.get_den()));
  if (!out.fits_ulong_p()) throw DomainError("exponent denominators too large");
  return out.get_ui();
}

Rational PowerProduct::integral_power() const {
  const unsigned long l = common_denominator();
  Rational out = 1;
  for (const auto& [base, exponent] : factors_) {
    const Rational scaled = exponent * Rational(Integer(l));
    out *= pow(base, to_long(scaled.get_num()));
  }
  return out;
}

int PowerProduct::compare(const Rational& q) const {
  if (q <= 0) return 1;
  const unsigned long l = common_denominator();
  const Rational lhs = integral_power();
  const Rational rhs = pow(q, static_cast<long>(l));
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

Integer PowerProduct::floor() const {
  return integer_root(mahlerkit::floor(integral_power()), common_denominator());
}

RealBall PowerProduct::log(Precision prec) const {
  RealBall out(prec);
  for (const auto& [base, exponent] : factors_) {
    out = out + RealBall::from_rational(exponent, prec) * mahlerkit::log(RealBall::from_rational(base, prec));
  }
  return out;
}

std::string PowerProduct::to_string() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& [base, exponent] : factors_) {
    if (!out.empty()) out += "*";
    out += base.get_den() == 1 ? mahlerkit::to_string(base) : "(" + mahlerkit::to_string(base) + ")";
    if (exponent != 1) out += "^(" + mahlerkit::to_string(exponent) + ")";
  }
  return out;
}

}  // namespace mahlerkit::matrixlab
