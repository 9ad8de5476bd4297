#include "mahlerkit/algnum/algebraic.hpp"

#include <cmath>
#include <limits>

#include "mahlerkit/algnum/mahler.hpp"
#include "mahlerkit/errors.hpp"

namespace mahlerkit::algnum {

namespace {

bool has_repeated_factor(const IntPolynomial& f) {
  for (const auto& part : squarefree_decomposition(f)) {
    if (part.second > 1) return true;
  }
  return false;
}

}  // namespace

bool irreducible_over_rationals(const IntPolynomial& f) {
  const int d = f.degree();
  if (d < 1) return false;
  if (d == 1) return true;
  if (d == 2) {
    const auto& c = f.coefficients();
    const Integer disc = c[1] * c[1] - 4 * c[2] * c[0];
    return disc < 0 || mpz_perfect_square_p(disc.get_mpz_t()) == 0;
  }
  if (d == 3) return rational_roots(f).empty();
  throw DomainError("irreducibility is only decided up to degree 3");
}

AlgebraicNumber::AlgebraicNumber(IntPolynomial minpoly, const ComplexBall& selector)
    : minpoly_(std::move(minpoly)), selector_(selector) {
  if (minpoly_.degree() < 1) throw DomainError("minimal polynomial must have degree >= 1");
  if (minpoly_.degree() <= 3) {
    if (!irreducible_over_rationals(minpoly_)) throw DomainError(minpoly_.to_string() + " is reducible");
  } else if (has_repeated_factor(minpoly_) || !rational_roots(minpoly_).empty()) {
    throw DomainError(minpoly_.to_string() + " is reducible");
  }
  const auto isolation = isolate_roots(minpoly_, std::max<Precision>(selector.precision(), 64));
  int touching = 0;
  bool inside = false;
  for (const auto& disk : isolation.disks) {
    const ComplexBall box = disk.ball(isolation.precision);
    if (box.overlaps(selector_)) {
      ++touching;
      inside = selector_.contains(box);
    }
  }
  if (touching != 1 || !inside) {
    throw DomainError("selector does not isolate exactly one root of " + minpoly_.to_string());
  }
}

AlgebraicNumber AlgebraicNumber::from_rational(const Rational& value) {
  const Rational v(value);
  const Mpfr one(1, 64);
  const RealBall re = RealBall::from_rational(v, 256).with_added_radius(one);
  const RealBall im = RealBall(256).with_added_radius(one);
  return AlgebraicNumber(IntPolynomial::from_rational(v), ComplexBall(re, im));
}

AlgebraicNumber AlgebraicNumber::nearest_root(IntPolynomial minpoly, double re, double im) {
  const auto isolation = isolate_roots(minpoly, 64);
  const RootDisk* best = nullptr;
  double best_distance = std::numeric_limits<double>::infinity();
  for (const auto& disk : isolation.disks) {
    const double distance = std::hypot(disk.re.to_double() - re, disk.im.to_double() - im);
    if (distance < best_distance) {
      best_distance = distance;
      best = &disk;
    }
  }
  // Half the gap to the nearest other centre keeps the box isolating.
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& disk : isolation.disks) {
    if (&disk == best) continue;
    gap = std::min(gap, std::hypot(disk.re.to_double() - best->re.to_double(),
                                   disk.im.to_double() - best->im.to_double()));
  }
  if (!std::isfinite(gap)) gap = 1.0;
  Mpfr half_side(64);
  mpfr_set_d(half_side.get(), gap / 4.0, MPFR_RNDD);
  if (mpfr_less_p(half_side.get(), best->radius.get())) half_side = best->radius;
  const ComplexBall selector = ComplexBall::disk(best->re, best->im, half_side, isolation.precision);
  return AlgebraicNumber(std::move(minpoly), selector);
}

ComplexBall AlgebraicNumber::enclosure(Precision prec) const {
  if (minpoly_.degree() == 1) {
    const Rational root(-Rational(minpoly_.constant_term()) / Rational(minpoly_.leading()));
    return ComplexBall(RealBall::from_rational(root, prec), RealBall(prec));
  }
  const auto isolation = isolate_roots(minpoly_, prec);
  for (std::size_t i = 0; i < isolation.disks.size(); ++i) {
    const RootDisk& disk = isolation.disks[i];
    if (!disk.ball(prec).overlaps(selector_)) continue;
    if (certainly_real(isolation, i)) {
      return ComplexBall(RealBall::from_mid_rad(disk.re, disk.radius, prec), RealBall(prec));
    }
    return disk.ball(prec);
  }
  throw RootIsolationFailure("selected root lost during refinement of " + minpoly_.to_string());
}

RealBall weil_height(const AlgebraicNumber& alpha, Precision prec) {
  const RealBall measure = mahler_measure_roots(alpha.minpoly(), prec);
  return log(measure) / RealBall::from_long(alpha.degree(), prec + 32);
}

ComplexBall log(const AlgebraicNumber& alpha, Precision prec, long branch) {
  const ComplexBall z = alpha.enclosure(prec + 32);
  if (z.contains_zero()) throw DomainError("logarithm of zero");
  return log(z, branch);
}

}  // namespace mahlerkit::algnum
