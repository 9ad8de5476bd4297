#include "mahlerkit/ball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "mahlerkit/errors.hpp"

namespace mahlerkit {

// ---------------------------------------------------------------------------
// Mpfr

Mpfr::Mpfr(Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Mpfr::Mpfr(long value, Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Mpfr::Mpfr(const Mpfr& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Mpfr::Mpfr(Mpfr&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Mpfr& Mpfr::operator=(const Mpfr& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Mpfr::~Mpfr() { mpfr_clear(value_); }

Rational Mpfr::to_rational() const {
  if (!mpfr_number_p(value_)) throw DomainError("non-finite MPFR value");
  Rational out;
  mpfr_get_q(out.get_mpq_t(), value_);
  return out;
}

std::string Mpfr::to_string(int digits, mpfr_rnd_t rnd) const {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*R*e", digits, rnd, value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

// ---------------------------------------------------------------------------
// helpers

namespace {

Mpfr abs_up(const Mpfr& x) {
  Mpfr out(kRadiusPrecision);
  mpfr_abs(out.get(), x.get(), MPFR_RNDU);
  return out;
}

// out = |a| * b + c, every step rounded up; a, b, c nonnegative after abs.
void add_product_up(Mpfr& acc, const Mpfr& a, const Mpfr& b) {
  Mpfr t(kRadiusPrecision);
  mpfr_mul(t.get(), a.get(), b.get(), MPFR_RNDU);
  mpfr_add(acc.get(), acc.get(), t.get(), MPFR_RNDU);
}

template <class F>
RealBall apply_increasing(const RealBall& x, F&& f) {
  const Precision prec = x.precision();
  Mpfr lo(prec);
  Mpfr hi(prec);
  f(lo.get(), x.lower().get(), MPFR_RNDD);
  f(hi.get(), x.upper().get(), MPFR_RNDU);
  return RealBall::from_endpoints(lo, hi, prec);
}

}  // namespace

// ---------------------------------------------------------------------------
// RealBall

RealBall::RealBall(Precision prec) : mid_(prec), rad_(kRadiusPrecision) {}

void RealBall::add_rounding_error(int ternary) {
  if (ternary == 0 || !mpfr_regular_p(mid_.get())) return;
  Mpfr ulp(kRadiusPrecision);
  mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(mid_.get()) - mid_.precision(), MPFR_RNDU);
  mpfr_add(rad_.get(), rad_.get(), ulp.get(), MPFR_RNDU);
}

RealBall RealBall::from_long(long value, Precision prec) {
  RealBall out(prec);
  out.add_rounding_error(mpfr_set_si(out.mid_.get(), value, MPFR_RNDN));
  return out;
}

RealBall RealBall::from_integer(const Integer& value, Precision prec) {
  RealBall out(prec);
  out.add_rounding_error(mpfr_set_z(out.mid_.get(), value.get_mpz_t(), MPFR_RNDN));
  return out;
}

RealBall RealBall::from_rational(const Rational& value, Precision prec) {
  RealBall out(prec);
  out.add_rounding_error(mpfr_set_q(out.mid_.get(), value.get_mpq_t(), MPFR_RNDN));
  return out;
}

RealBall RealBall::from_mpfr(const Mpfr& value, Precision prec) {
  RealBall out(prec);
  out.add_rounding_error(mpfr_set(out.mid_.get(), value.get(), MPFR_RNDN));
  return out;
}

RealBall RealBall::from_endpoints(const Mpfr& lo, const Mpfr& hi, Precision prec) {
  RealBall out(prec);
  mpfr_add(out.mid_.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(out.mid_.get(), out.mid_.get(), 1, MPFR_RNDN);
  Mpfr up(kRadiusPrecision);
  Mpfr down(kRadiusPrecision);
  mpfr_sub(up.get(), hi.get(), out.mid_.get(), MPFR_RNDU);
  mpfr_sub(down.get(), out.mid_.get(), lo.get(), MPFR_RNDU);
  mpfr_max(out.rad_.get(), up.get(), down.get(), MPFR_RNDU);
  if (mpfr_sgn(out.rad_.get()) < 0) mpfr_set_zero(out.rad_.get(), 1);
  return out;
}

RealBall RealBall::from_mid_rad(const Mpfr& mid, const Mpfr& rad, Precision prec) {
  RealBall out = from_mpfr(mid, prec);
  Mpfr r = abs_up(rad);
  mpfr_add(out.rad_.get(), out.rad_.get(), r.get(), MPFR_RNDU);
  return out;
}

RealBall RealBall::pi(Precision prec) {
  Mpfr lo(prec);
  Mpfr hi(prec);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return from_endpoints(lo, hi, prec);
}

RealBall RealBall::e(Precision prec) { return exp(from_long(1, prec)); }

RealBall RealBall::log2(Precision prec) {
  Mpfr lo(prec);
  Mpfr hi(prec);
  mpfr_const_log2(lo.get(), MPFR_RNDD);
  mpfr_const_log2(hi.get(), MPFR_RNDU);
  return from_endpoints(lo, hi, prec);
}

Mpfr RealBall::lower() const {
  Mpfr out(precision());
  mpfr_sub(out.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  return out;
}

Mpfr RealBall::upper() const {
  Mpfr out(precision());
  mpfr_add(out.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return out;
}

bool RealBall::contains_zero() const { return !is_positive() && !is_negative(); }

bool RealBall::is_positive() const { return mpfr_sgn(lower().get()) > 0; }

bool RealBall::is_negative() const { return mpfr_sgn(upper().get()) < 0; }

bool RealBall::is_nonnegative() const { return mpfr_sgn(lower().get()) >= 0; }

bool RealBall::contains(const Rational& value) const {
  return mpfr_cmp_q(lower().get(), value.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(upper().get(), value.get_mpq_t()) >= 0;
}

bool RealBall::contains(const RealBall& inner) const {
  return mpfr_lessequal_p(lower().get(), inner.lower().get()) &&
         mpfr_lessequal_p(inner.upper().get(), upper().get());
}

bool RealBall::overlaps(const RealBall& other) const {
  return mpfr_lessequal_p(lower().get(), other.upper().get()) &&
         mpfr_lessequal_p(other.lower().get(), upper().get());
}

double RealBall::relative_radius() const {
  if (rad_.is_zero()) return 0.0;
  if (mid_.is_zero()) return std::numeric_limits<double>::infinity();
  Mpfr a(kRadiusPrecision);
  mpfr_abs(a.get(), mid_.get(), MPFR_RNDD);
  Mpfr q(kRadiusPrecision);
  mpfr_div(q.get(), rad_.get(), a.get(), MPFR_RNDU);
  return mpfr_get_d(q.get(), MPFR_RNDU);
}

RealBall RealBall::with_added_radius(const Mpfr& extra) const {
  RealBall out = *this;
  Mpfr r = abs_up(extra);
  mpfr_add(out.rad_.get(), out.rad_.get(), r.get(), MPFR_RNDU);
  return out;
}

RealBall RealBall::inflated(double factor) const {
  RealBall out = *this;
  mpfr_mul_d(out.rad_.get(), out.rad_.get(), factor, MPFR_RNDU);
  return out;
}

RealBall RealBall::with_precision(Precision prec) const {
  RealBall out = from_mpfr(mid_, prec);
  mpfr_add(out.rad_.get(), out.rad_.get(), rad_.get(), MPFR_RNDU);
  return out;
}

std::string RealBall::to_string(int digits) const {
  // The printed midpoint is rounded; its error goes into the printed radius
  // so the text still encloses the ball.
  const std::string mid_text = mid_.to_string(digits);
  const Precision wide = precision() + 4 * digits + 16;
  Mpfr lo(wide), hi(wide), gap(kRadiusPrecision), gap_hi(kRadiusPrecision), radius(kRadiusPrecision);
  mpfr_set_str(lo.get(), mid_text.c_str(), 10, MPFR_RNDD);
  mpfr_set_str(hi.get(), mid_text.c_str(), 10, MPFR_RNDU);
  mpfr_sub(gap.get(), mid_.get(), lo.get(), MPFR_RNDU);
  mpfr_sub(gap_hi.get(), hi.get(), mid_.get(), MPFR_RNDU);
  mpfr_abs(gap.get(), gap.get(), MPFR_RNDU);
  mpfr_abs(gap_hi.get(), gap_hi.get(), MPFR_RNDU);
  mpfr_max(gap.get(), gap.get(), gap_hi.get(), MPFR_RNDU);
  mpfr_add(radius.get(), rad_.get(), gap.get(), MPFR_RNDU);
  return mid_text + "±" + radius.to_string(2, MPFR_RNDU);
}

RealBall operator+(const RealBall& a, const RealBall& b) {
  RealBall out(std::max(a.precision(), b.precision()));
  const int t = mpfr_add(out.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  mpfr_add(out.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  out.add_rounding_error(t);
  return out;
}

RealBall operator-(const RealBall& a, const RealBall& b) {
  RealBall out(std::max(a.precision(), b.precision()));
  const int t = mpfr_sub(out.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  mpfr_add(out.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  out.add_rounding_error(t);
  return out;
}

RealBall operator-(const RealBall& a) {
  RealBall out = a;
  mpfr_neg(out.mid_.get(), a.mid_.get(), MPFR_RNDN);
  return out;
}

RealBall operator*(const RealBall& a, const RealBall& b) {
  RealBall out(std::max(a.precision(), b.precision()));
  const int t = mpfr_mul(out.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  const Mpfr am = abs_up(a.mid_);
  const Mpfr bm = abs_up(b.mid_);
  add_product_up(out.rad_, am, b.rad_);
  add_product_up(out.rad_, bm, a.rad_);
  add_product_up(out.rad_, a.rad_, b.rad_);
  out.add_rounding_error(t);
  return out;
}

RealBall inverse(const RealBall& x) {
  if (x.contains_zero()) throw DomainError("inverse of a ball containing zero");
  const Precision prec = x.precision();
  Mpfr lo(prec);
  Mpfr hi(prec);
  // 1/x is decreasing on each sign component.
  mpfr_ui_div(lo.get(), 1, x.upper().get(), MPFR_RNDD);
  mpfr_ui_div(hi.get(), 1, x.lower().get(), MPFR_RNDU);
  return RealBall::from_endpoints(lo, hi, prec);
}

RealBall operator/(const RealBall& a, const RealBall& b) {
  if (b.is_exact() && a.is_exact()) {
    // Exact operands: one correctly rounded division.
    const Precision prec = std::max(a.precision(), b.precision());
    if (b.mid().is_zero()) throw DomainError("division by zero");
    Mpfr lo(prec);
    Mpfr hi(prec);
    mpfr_div(lo.get(), a.mid().get(), b.mid().get(), MPFR_RNDD);
    mpfr_div(hi.get(), a.mid().get(), b.mid().get(), MPFR_RNDU);
    return RealBall::from_endpoints(lo, hi, prec);
  }
  return a * inverse(b);
}

namespace {

// Bounds on |x| over the ball: [0 or min |x|, max |x|].
std::pair<Mpfr, Mpfr> magnitude_bounds(const RealBall& x) {
  const Precision prec = x.precision();
  Mpfr lo(prec);
  Mpfr hi(prec);
  const Mpfr l = x.lower();
  const Mpfr u = x.upper();
  if (mpfr_sgn(l.get()) >= 0) {
    mpfr_set(lo.get(), l.get(), MPFR_RNDD);
    mpfr_set(hi.get(), u.get(), MPFR_RNDU);
  } else if (mpfr_sgn(u.get()) <= 0) {
    mpfr_neg(lo.get(), u.get(), MPFR_RNDD);
    mpfr_neg(hi.get(), l.get(), MPFR_RNDU);
  } else {
    Mpfr neg(prec);
    mpfr_neg(neg.get(), l.get(), MPFR_RNDU);
    mpfr_max(hi.get(), neg.get(), u.get(), MPFR_RNDU);
  }
  return {std::move(lo), std::move(hi)};
}

}  // namespace

RealBall abs(const RealBall& x) {
  if (x.is_nonnegative()) return x;
  if (x.is_negative()) return -x;
  const auto [lo, hi] = magnitude_bounds(x);
  return RealBall::from_endpoints(lo, hi, x.precision());
}

RealBall sqr(const RealBall& x) {
  const Precision prec = x.precision();
  auto [lo, hi] = magnitude_bounds(x);
  mpfr_sqr(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_sqr(hi.get(), hi.get(), MPFR_RNDU);
  return RealBall::from_endpoints(lo, hi, prec);
}

// Points below zero lie outside the domain and are ignored; a ball that is
// entirely negative is an error.
RealBall sqrt(const RealBall& x) {
  if (x.is_negative()) throw DomainError("sqrt of a negative ball");
  const Precision prec = x.precision();
  Mpfr lo = x.lower();
  Mpfr hi = x.upper();
  if (lo.sign() < 0) mpfr_set_zero(lo.get(), 1);
  mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
  return RealBall::from_endpoints(lo, hi, prec);
}

RealBall log(const RealBall& x) {
  if (!x.is_positive()) throw DomainError("log of a ball that is not positive");
  return apply_increasing(x, [](mpfr_ptr out, mpfr_srcptr in, mpfr_rnd_t rnd) {
    mpfr_log(out, in, rnd);
  });
}

RealBall exp(const RealBall& x) {
  return apply_increasing(x, [](mpfr_ptr out, mpfr_srcptr in, mpfr_rnd_t rnd) {
    mpfr_exp(out, in, rnd);
  });
}

RealBall pow(const RealBall& base, long exponent) {
  if (exponent < 0) return inverse(pow(base, -exponent));
  RealBall result = RealBall::from_long(1, base.precision());
  RealBall square = base;
  unsigned long e = static_cast<unsigned long>(exponent);
  bool first = true;
  while (e != 0) {
    if (e & 1UL) {
      result = first ? square : result * square;
      first = false;
    }
    e >>= 1;
    if (e != 0) square = sqr(square);
  }
  return result;
}

RealBall pow(const RealBall& base, const Rational& exponent) {
  if (exponent.get_den() == 1 && exponent.get_num().fits_slong_p()) {
    return pow(base, exponent.get_num().get_si());
  }
  return exp(RealBall::from_rational(exponent, base.precision()) * log(base));
}

RealBall pow(const RealBall& base, const RealBall& exponent) { return exp(exponent * log(base)); }

RealBall max(const RealBall& a, const RealBall& b) {
  const Precision prec = std::max(a.precision(), b.precision());
  Mpfr lo(prec);
  Mpfr hi(prec);
  mpfr_max(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  return RealBall::from_endpoints(lo, hi, prec);
}

RealBall union_hull(const RealBall& a, const RealBall& b) {
  const Precision prec = std::max(a.precision(), b.precision());
  Mpfr lo(prec);
  Mpfr hi(prec);
  mpfr_min(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  return RealBall::from_endpoints(lo, hi, prec);
}

RealBall atan2(const RealBall& y, const RealBall& x) {
  const Precision prec = std::max(x.precision(), y.precision());
  if (x.contains_zero() && y.contains_zero()) throw DomainError("argument of a ball containing zero");
  if (y.contains_zero() && !x.is_positive()) {
    if (y.is_exact() && y.mid().is_zero()) return RealBall::pi(prec);
    throw DomainError("argument straddles the branch cut");
  }
  Mpfr mid(prec);
  const int t = mpfr_atan2(mid.get(), y.mid().get(), x.mid().get(), MPFR_RNDN);
  RealBall out = RealBall::from_mpfr(mid, prec);
  if (t != 0) {
    Mpfr ulp(kRadiusPrecision);
    mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(mid.get()) - prec, MPFR_RNDU);
    out = out.with_added_radius(ulp);
  }
  if (!x.is_exact() || !y.is_exact()) {
    // |d arg| <= (|dx| + |dy|) / min |z| on a box avoiding the cut.
    const RealBall modulus = sqrt(sqr(x) + sqr(y));
    Mpfr num(kRadiusPrecision);
    mpfr_add(num.get(), x.rad().get(), y.rad().get(), MPFR_RNDU);
    Mpfr den(kRadiusPrecision);
    mpfr_set(den.get(), modulus.lower().get(), MPFR_RNDD);
    Mpfr extra(kRadiusPrecision);
    mpfr_div(extra.get(), num.get(), den.get(), MPFR_RNDU);
    out = out.with_added_radius(extra);
  }
  return out;
}

bool certainly_less(const RealBall& a, const RealBall& b) {
  return mpfr_less_p(a.upper().get(), b.lower().get()) != 0;
}

bool certainly_greater(const RealBall& a, const RealBall& b) { return certainly_less(b, a); }

bool certainly_less_equal(const RealBall& a, const RealBall& b) {
  return mpfr_lessequal_p(a.upper().get(), b.lower().get()) != 0;
}

// ---------------------------------------------------------------------------
// ComplexBall

ComplexBall ComplexBall::disk(const Mpfr& re, const Mpfr& im, const Mpfr& radius, Precision prec) {
  return ComplexBall(RealBall::from_mid_rad(re, radius, prec), RealBall::from_mid_rad(im, radius, prec));
}

Precision ComplexBall::precision() const { return std::max(re_.precision(), im_.precision()); }

std::string ComplexBall::to_string(int digits) const {
  return "(" + re_.to_string(digits) + ") + (" + im_.to_string(digits) + ")i";
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
  return {a.re() + b.re(), a.im() + b.im()};
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
  return {a.re() - b.re(), a.im() - b.im()};
}

ComplexBall operator-(const ComplexBall& a) { return {-a.re(), -a.im()}; }

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  return {a.re() * b.re() - a.im() * b.im(), a.re() * b.im() + a.im() * b.re()};
}

ComplexBall operator*(const ComplexBall& a, const RealBall& b) { return {a.re() * b, a.im() * b}; }

ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
  const RealBall den = sqr(b.re()) + sqr(b.im());
  if (!den.is_positive()) throw DomainError("complex division by a ball containing zero");
  const RealBall re = a.re() * b.re() + a.im() * b.im();
  const RealBall im = a.im() * b.re() - a.re() * b.im();
  return {re / den, im / den};
}

RealBall abs(const ComplexBall& z) {
  if (z.im().is_exact() && z.im().mid().is_zero()) return abs(z.re());
  if (z.re().is_exact() && z.re().mid().is_zero()) return abs(z.im());
  const Precision prec = z.precision();
  const auto [re_lo, re_hi] = magnitude_bounds(z.re());
  const auto [im_lo, im_hi] = magnitude_bounds(z.im());
  Mpfr lo(prec);
  Mpfr hi(prec);
  mpfr_hypot(lo.get(), re_lo.get(), im_lo.get(), MPFR_RNDD);
  mpfr_hypot(hi.get(), re_hi.get(), im_hi.get(), MPFR_RNDU);
  return RealBall::from_endpoints(lo, hi, prec);
}

RealBall arg(const ComplexBall& z) { return atan2(z.im(), z.re()); }

ComplexBall log(const ComplexBall& z, long branch) {
  RealBall im = arg(z);
  if (branch != 0) {
    im = im + RealBall::from_long(2 * branch, z.precision()) * RealBall::pi(z.precision());
  }
  return {log(abs(z)), im};
}

}  // namespace mahlerkit
