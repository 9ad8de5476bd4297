#include "mahlerkit/algnum/roots.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>

#include "mahlerkit/errors.hpp"

namespace mahlerkit::algnum {

namespace {

constexpr int kMaxAberthSweeps = 400;

// Plain floating complex number used by the (uncertified) refinement.
struct Point {
  Mpfr re;
  Mpfr im;
  explicit Point(Precision prec) : re(prec), im(prec) {}
};

void set_sum(Point& out, const Point& a, const Point& b) {
  mpfr_add(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}

void set_difference(Point& out, const Point& a, const Point& b) {
  mpfr_sub(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(out.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}

void set_product(Point& out, const Point& a, const Point& b) {
  const Precision prec = out.re.precision();
  Mpfr t1(prec), t2(prec), re(prec);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_swap(out.re.get(), re.get());
}

// Returns false when b is zero.
bool set_quotient(Point& out, const Point& a, const Point& b) {
  const Precision prec = out.re.precision();
  Mpfr den(prec), t1(prec), t2(prec), re(prec);
  mpfr_sqr(t1.get(), b.re.get(), MPFR_RNDN);
  mpfr_sqr(t2.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(den.get(), t1.get(), t2.get(), MPFR_RNDN);
  if (mpfr_zero_p(den.get())) return false;
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(re.get(), re.get(), den.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(out.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(out.im.get(), out.im.get(), den.get(), MPFR_RNDN);
  mpfr_swap(out.re.get(), re.get());
  return true;
}

// Binary exponent of the larger component; very negative for zero.
long exponent_of(const Point& z) {
  long e = -(1L << 40);
  if (!z.re.is_zero()) e = std::max<long>(e, mpfr_get_exp(z.re.get()));
  if (!z.im.is_zero()) e = std::max<long>(e, mpfr_get_exp(z.im.get()));
  return e;
}

// f(z) and f'(z) by Horner.
void evaluate_with_derivative(const std::vector<Mpfr>& coeffs, const Point& z, Point& value,
                              Point& slope) {
  mpfr_set(value.re.get(), coeffs.back().get(), MPFR_RNDN);
  mpfr_set_zero(value.im.get(), 1);
  mpfr_set_zero(slope.re.get(), 1);
  mpfr_set_zero(slope.im.get(), 1);
  for (auto it = std::next(coeffs.rbegin()); it != coeffs.rend(); ++it) {
    set_product(slope, slope, z);
    set_sum(slope, slope, value);
    set_product(value, value, z);
    mpfr_add(value.re.get(), value.re.get(), it->get(), MPFR_RNDN);
  }
}

std::vector<std::complex<double>> companion_seeds(const IntPolynomial& f) {
  const int d = f.degree();
  const auto& c = f.coefficients();
  const double lead = c.back().get_d();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  bool finite = std::isfinite(lead);
  for (int i = 0; i < d; ++i) {
    const double entry = -c[static_cast<std::size_t>(i)].get_d() / lead;
    finite = finite && std::isfinite(entry);
    companion(i, d - 1) = entry;
    if (i > 0) companion(i, i - 1) = 1.0;
  }
  std::vector<std::complex<double>> seeds;
  if (finite) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() == Eigen::Success) {
      for (int i = 0; i < d; ++i) seeds.push_back(solver.eigenvalues()[i]);
    }
  }
  bool usable = static_cast<int>(seeds.size()) == d;
  for (const auto& s : seeds) usable = usable && std::isfinite(s.real()) && std::isfinite(s.imag());
  if (!usable) {
    // Points on a circle with an irrational angular offset.
    seeds.clear();
    for (int i = 0; i < d; ++i) seeds.push_back(std::polar(1.5, 2.0 * M_PI * (i + 0.4) / d));
  }
  // Coincident seeds stall the simultaneous iteration.
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < i; ++j) {
      if (std::abs(seeds[static_cast<std::size_t>(i)] - seeds[static_cast<std::size_t>(j)]) < 1e-12) {
        seeds[static_cast<std::size_t>(i)] *= std::polar(1.0 + 1e-6 * (i + 1), 1e-6 * (i + 1));
      }
    }
  }
  return seeds;
}

// Aberth-Ehrlich sweeps until the corrections fall below 2^-(prec - 8)
// relative to the root size.
void aberth(const std::vector<Mpfr>& coeffs, std::vector<Point>& z, Precision prec) {
  const std::size_t d = z.size();
  const long tolerance = -static_cast<long>(prec) + 8;
  Point value(prec), slope(prec), ratio(prec), sum(prec), diff(prec), term(prec), one(prec),
      correction(prec);
  mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
  mpfr_set_zero(one.im.get(), 1);
  for (int sweep = 0; sweep < kMaxAberthSweeps; ++sweep) {
    long worst = -(1L << 40);
    for (std::size_t i = 0; i < d; ++i) {
      evaluate_with_derivative(coeffs, z[i], value, slope);
      if (value.re.is_zero() && value.im.is_zero()) continue;
      if (!set_quotient(ratio, value, slope)) {
        // Stationary point: nudge off it.
        mpfr_mul_d(z[i].re.get(), z[i].re.get(), 1.0 + 1e-3, MPFR_RNDN);
        mpfr_add_d(z[i].im.get(), z[i].im.get(), 1e-3, MPFR_RNDN);
        worst = 0;
        continue;
      }
      mpfr_set_zero(sum.re.get(), 1);
      mpfr_set_zero(sum.im.get(), 1);
      for (std::size_t j = 0; j < d; ++j) {
        if (j == i) continue;
        set_difference(diff, z[i], z[j]);
        if (set_quotient(term, one, diff)) set_sum(sum, sum, term);
      }
      set_product(term, ratio, sum);
      set_difference(term, one, term);
      if (!set_quotient(correction, ratio, term)) continue;
      set_difference(z[i], z[i], correction);
      worst = std::max(worst, exponent_of(correction) - std::max(0L, exponent_of(z[i])));
    }
    if (worst < tolerance) return;
  }
}

// Weierstrass inclusion disks; empty when the disks are not pairwise
// disjoint or a correction could not be bounded.
std::vector<RootDisk> certify(const IntPolynomial& f, const std::vector<Point>& z, Precision prec) {
  const std::size_t d = z.size();
  const RealBall lead = RealBall::from_integer(f.leading(), prec);
  const RealBall degree = RealBall::from_long(static_cast<long>(d), prec);
  std::vector<ComplexBall> centres;
  centres.reserve(d);
  for (const auto& p : z) {
    centres.emplace_back(RealBall::from_mpfr(p.re, prec), RealBall::from_mpfr(p.im, prec));
  }
  std::vector<RootDisk> disks;
  disks.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    ComplexBall denominator(lead);
    for (std::size_t j = 0; j < d; ++j) {
      if (j != i) denominator = denominator * (centres[i] - centres[j]);
    }
    if (denominator.contains_zero()) return {};
    ComplexBall correction;
    try {
      correction = f.evaluate(centres[i]) / denominator;
    } catch (const DomainError&) {
      return {};
    }
    const RealBall radius = degree * abs(correction);
    disks.push_back(RootDisk{z[i].re, z[i].im, radius.upper()});
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const RealBall gap = abs(centres[i] - centres[j]);
      const RealBall reach = RealBall::from_mpfr(disks[i].radius, prec) + RealBall::from_mpfr(disks[j].radius, prec);
      if (!certainly_less(reach, gap)) return {};
    }
  }
  return disks;
}

}  // namespace

RealBall RootDisk::modulus(Precision prec) const {
  const ComplexBall centre(RealBall::from_mpfr(re, prec), RealBall::from_mpfr(im, prec));
  const RealBall size = abs(centre);
  const RealBall lo = size - RealBall::from_mpfr(radius, prec);
  const RealBall hi = size + RealBall::from_mpfr(radius, prec);
  Mpfr low = lo.lower();
  if (low.sign() < 0) mpfr_set_zero(low.get(), 1);
  return RealBall::from_endpoints(low, hi.upper(), prec);
}

bool RootDisk::contains(const ComplexBall& z) const {
  const Precision prec = std::max(z.precision(), re.precision());
  const ComplexBall centre(RealBall::from_mpfr(re, prec), RealBall::from_mpfr(im, prec));
  return certainly_less_equal(abs(z - centre), RealBall::from_mpfr(radius, prec));
}

RootIsolation isolate_roots(const IntPolynomial& f, Precision prec, Precision cap) {
  const int d = f.degree();
  if (d < 1) throw DomainError("root isolation needs degree >= 1");
  if (d > kMaxRootDegree) {
    throw RootIsolationFailure("degree " + std::to_string(d) + " exceeds the cap of " +
                               std::to_string(kMaxRootDegree));
  }
  const auto seeds = companion_seeds(f);
  std::vector<Point> z;
  for (const auto& s : seeds) {
    Point p(std::max<Precision>(prec, 53));
    mpfr_set_d(p.re.get(), s.real(), MPFR_RNDN);
    mpfr_set_d(p.im.get(), s.imag(), MPFR_RNDN);
    z.push_back(std::move(p));
  }
  for (Precision work = std::max<Precision>(prec, 53); work <= cap; work *= 2) {
    std::vector<Mpfr> coeffs;
    for (const auto& c : f.coefficients()) {
      Mpfr m(work);
      mpfr_set_z(m.get(), c.get_mpz_t(), MPFR_RNDN);
      coeffs.push_back(std::move(m));
    }
    for (auto& p : z) {
      mpfr_prec_round(p.re.get(), work, MPFR_RNDN);
      mpfr_prec_round(p.im.get(), work, MPFR_RNDN);
    }
    aberth(coeffs, z, work);
    auto disks = certify(f, z, work);
    if (!disks.empty()) return RootIsolation{std::move(disks), work};
  }
  throw RootIsolationFailure("roots of " + f.to_string() + " not isolated within " +
                             std::to_string(cap) + " bits");
}

bool certainly_real(const RootIsolation& isolation, std::size_t index) {
  const Precision prec = isolation.precision;
  const RootDisk& disk = isolation.disks.at(index);
  const RealBall im = RealBall::from_mpfr(disk.im, prec);
  const RealBall radius = RealBall::from_mpfr(disk.radius, prec);
  if (!certainly_less_equal(abs(im), radius)) return false;
  const ComplexBall mirror(RealBall::from_mpfr(disk.re, prec), -im);
  for (std::size_t j = 0; j < isolation.disks.size(); ++j) {
    if (j == index) continue;
    const RootDisk& other = isolation.disks[j];
    const ComplexBall centre(RealBall::from_mpfr(other.re, prec), RealBall::from_mpfr(other.im, prec));
    if (!certainly_less(radius + RealBall::from_mpfr(other.radius, prec), abs(mirror - centre))) return false;
  }
  return true;
}

std::vector<Rational> rational_roots(const IntPolynomial& f) {
  std::vector<Rational> out;
  if (f.degree() < 1) return out;
  if (f.constant_term() == 0) out.emplace_back(0);
  const IntPolynomial g = strip_zero_roots(f).first;
  if (g.degree() < 1) return out;
  const Integer lead = g.leading();
  // A rational root p/q has q <= lead, so any approximation closer than
  // 1/(2 lead^2) has it among its convergents.
  const Rational closeness(1, Integer(4 * lead * lead));
  for (const auto& [factor, multiplicity] : squarefree_decomposition(g)) {
    (void)multiplicity;
    for (Precision prec = 64;; prec *= 2) {
      const auto isolation = isolate_roots(factor, prec);
      bool sharp = true;
      for (const auto& disk : isolation.disks) sharp = sharp && disk.radius.to_rational() < closeness;
      if (!sharp) continue;
      for (const auto& disk : isolation.disks) {
        if (Rational(abs(disk.im.to_rational())) > disk.radius.to_rational()) continue;
        // Convergents of the real part of the centre.
        Rational x = disk.re.to_rational();
        Integer p_prev = 1, q_prev = 0, p = floor(x), q = 1;
        Rational rest = x - Rational(p);
        while (q <= lead) {
          const Rational candidate(p, q);
          const Rational offset = candidate - disk.re.to_rational();
          if (abs(offset) <= disk.radius.to_rational() && factor.evaluate(candidate) == 0 &&
              std::find(out.begin(), out.end(), candidate) == out.end()) {
            out.push_back(candidate);
            break;
          }
          if (rest == 0) break;
          const Rational next = 1 / rest;
          const Integer a = floor(next);
          rest = next - Rational(a);
          const Integer p_next = a * p + p_prev;
          const Integer q_next = a * q + q_prev;
          p_prev = p;
          q_prev = q;
          p = p_next;
          q = q_next;
        }
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mahlerkit::algnum
