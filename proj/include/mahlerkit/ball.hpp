#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "mahlerkit/exact.hpp"

namespace mahlerkit {

using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 64;
inline constexpr Precision kRadiusPrecision = 64;

// Owning RAII wrapper around an mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(Precision prec = kDefaultPrecision);
  Mpfr(long value, Precision prec);
  Mpfr(const Mpfr& other);
  Mpfr(Mpfr&& other) noexcept;
  Mpfr& operator=(const Mpfr& other);
  Mpfr& operator=(Mpfr&& other) noexcept;
  ~Mpfr();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  Precision precision() const { return mpfr_get_prec(value_); }

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(value_, MPFR_RNDN); }

  // Exact conversion; the value is always a dyadic rational.
  Rational to_rational() const;

  // Scientific notation with `digits` digits after the point.
  std::string to_string(int digits = 17, mpfr_rnd_t rnd = MPFR_RNDN) const;

 private:
  mpfr_t value_;
};

// Midpoint-radius real ball [mid - rad, mid + rad]. Every operation returns
// a ball containing the exact image of all points of its inputs.
class RealBall {
 public:
  RealBall() : RealBall(kDefaultPrecision) {}
  explicit RealBall(Precision prec);

  static RealBall from_long(long value, Precision prec = kDefaultPrecision);
  static RealBall from_integer(const Integer& value, Precision prec = kDefaultPrecision);
  static RealBall from_rational(const Rational& value, Precision prec = kDefaultPrecision);
  static RealBall from_mpfr(const Mpfr& value, Precision prec);
  static RealBall from_endpoints(const Mpfr& lo, const Mpfr& hi, Precision prec);
  static RealBall from_mid_rad(const Mpfr& mid, const Mpfr& rad, Precision prec);
  static RealBall pi(Precision prec);
  static RealBall e(Precision prec);
  static RealBall log2(Precision prec);

  const Mpfr& mid() const { return mid_; }
  const Mpfr& rad() const { return rad_; }
  Precision precision() const { return mid_.precision(); }

  Mpfr lower() const;
  Mpfr upper() const;

  bool is_exact() const { return rad_.is_zero(); }
  bool contains_zero() const;
  bool is_positive() const;
  bool is_negative() const;
  bool is_nonnegative() const;
  bool contains(const Rational& value) const;
  bool contains(const RealBall& inner) const;
  bool overlaps(const RealBall& other) const;

  // Radius divided by |midpoint|, rounded up; infinity for a zero midpoint
  // with nonzero radius.
  double relative_radius() const;

  RealBall with_added_radius(const Mpfr& extra) const;
  RealBall inflated(double factor) const;
  RealBall with_precision(Precision prec) const;

  // "mid±rad".
  std::string to_string(int digits = 17) const;
  double to_double() const { return mid_.to_double(); }

 private:
  void add_rounding_error(int ternary);

  Mpfr mid_;
  Mpfr rad_;

  friend RealBall operator+(const RealBall&, const RealBall&);
  friend RealBall operator-(const RealBall&, const RealBall&);
  friend RealBall operator*(const RealBall&, const RealBall&);
  friend RealBall operator-(const RealBall&);
};

RealBall operator+(const RealBall& a, const RealBall& b);
RealBall operator-(const RealBall& a, const RealBall& b);
RealBall operator*(const RealBall& a, const RealBall& b);
RealBall operator/(const RealBall& a, const RealBall& b);
RealBall operator-(const RealBall& a);

RealBall inverse(const RealBall& x);
RealBall abs(const RealBall& x);
RealBall sqr(const RealBall& x);
RealBall sqrt(const RealBall& x);
RealBall log(const RealBall& x);
RealBall exp(const RealBall& x);
RealBall pow(const RealBall& base, const RealBall& exponent);
RealBall pow(const RealBall& base, const Rational& exponent);
RealBall pow(const RealBall& base, long exponent);
RealBall max(const RealBall& a, const RealBall& b);
RealBall atan2(const RealBall& y, const RealBall& x);
RealBall union_hull(const RealBall& a, const RealBall& b);

// Strict comparisons that hold for every pair of points of the balls.
bool certainly_less(const RealBall& a, const RealBall& b);
bool certainly_greater(const RealBall& a, const RealBall& b);
bool certainly_less_equal(const RealBall& a, const RealBall& b);

// Rectangular complex ball: real and imaginary parts are independent balls.
class ComplexBall {
 public:
  ComplexBall() = default;
  explicit ComplexBall(Precision prec) : re_(prec), im_(prec) {}
  ComplexBall(RealBall re, RealBall im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit ComplexBall(const RealBall& re) : re_(re), im_(re.precision()) {}

  // Square of half-side `radius` centred at (re, im); contains that disk.
  static ComplexBall disk(const Mpfr& re, const Mpfr& im, const Mpfr& radius, Precision prec);

  const RealBall& re() const { return re_; }
  const RealBall& im() const { return im_; }
  Precision precision() const;

  bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
  bool overlaps(const ComplexBall& other) const {
    return re_.overlaps(other.re_) && im_.overlaps(other.im_);
  }
  bool contains(const ComplexBall& inner) const {
    return re_.contains(inner.re_) && im_.contains(inner.im_);
  }

  std::string to_string(int digits = 17) const;

 private:
  RealBall re_;
  RealBall im_;
};

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator*(const ComplexBall& a, const RealBall& b);
ComplexBall operator/(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator-(const ComplexBall& a);

RealBall abs(const ComplexBall& z);
RealBall arg(const ComplexBall& z);
// Principal branch plus 2*pi*i*branch.
ComplexBall log(const ComplexBall& z, long branch = 0);

}  // namespace mahlerkit
