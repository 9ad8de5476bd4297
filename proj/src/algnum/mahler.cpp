#include "mahlerkit/algnum/mahler.hpp"

#include <cmath>
#include <complex>
#include <optional>

#include "mahlerkit/algnum/roots.hpp"
#include "mahlerkit/errors.hpp"

namespace mahlerkit::algnum {

namespace {

constexpr Precision kGuardBits = 32;
constexpr Precision kMeasurePrecisionCap = Precision{1} << 16;

RealBall squarefree_measure(const IntPolynomial& g, Precision prec) {
  const auto isolation = isolate_roots(g, prec, kMeasurePrecisionCap);
  const RealBall one = RealBall::from_long(1, prec);
  RealBall acc = RealBall::from_integer(g.leading(), prec);
  for (const auto& disk : isolation.disks) acc = acc * max(one, disk.modulus(prec));
  return acc;
}

bool sharp_enough(const RealBall& value, Precision precision) {
  Mpfr limit(kRadiusPrecision);
  mpfr_mul_2si(limit.get(), value.lower().get(), 8 - static_cast<long>(precision), MPFR_RNDD);
  return value.is_positive() && mpfr_lessequal_p(value.rad().get(), limit.get()) != 0;
}

constexpr long kResetInterval = 1024;

// Mean of log|f| over N shifted nodes. Nodes advance by rotation and are
// recomputed from sin/cos every kResetInterval steps.
long double mean_log_modulus(const std::vector<double>& coeffs, long nodes) {
  static const long double kShift = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  static const long double kTwoPi = 2.0L * std::acos(-1.0L);
  const long double step_angle = kTwoPi / static_cast<long double>(nodes);
  const std::complex<double> step(static_cast<double>(std::cos(step_angle)),
                                  static_cast<double>(std::sin(step_angle)));
  long double mantissa = 1.0L;
  long exponent = 0;
  std::complex<double> z;
  for (long k = 0; k < nodes; ++k) {
    if (k % kResetInterval == 0) {
      const long double angle = step_angle * (static_cast<long double>(k) + kShift);
      z = {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
    } else {
      z *= step;
    }
    std::complex<double> acc(coeffs.back(), 0.0);
    for (auto it = std::next(coeffs.rbegin()); it != coeffs.rend(); ++it) acc = acc * z + *it;
    const double size = std::norm(acc);
    if (!(size > 0.0) || !std::isfinite(size)) {
      throw QuadratureDivergence("integrand is singular at a quadrature node");
    }
    int e = 0;
    mantissa = std::frexp(mantissa * static_cast<long double>(size), &e);
    exponent += e;
  }
  const long double log_sum = std::log(mantissa) + static_cast<long double>(exponent) * std::log(2.0L);
  return log_sum / (2.0L * static_cast<long double>(nodes));
}

}  // namespace

RealBall mahler_measure_roots(const IntPolynomial& f, Precision precision) {
  if (f.degree() < 1) throw DomainError("Mahler measure needs degree >= 1");
  if (precision < 2) throw DomainError("precision must be at least 2 bits");
  const IntPolynomial g = strip_zero_roots(f).first;
  const auto parts = g.degree() >= 1 ? squarefree_decomposition(g) : std::vector<std::pair<IntPolynomial, int>>{};
  for (Precision work = precision + kGuardBits; work <= kMeasurePrecisionCap; work *= 2) {
    RealBall acc = RealBall::from_integer(g.leading(), work);
    if (!parts.empty()) {
      acc = RealBall::from_long(1, work);
      for (const auto& [factor, multiplicity] : parts) acc = acc * pow(squarefree_measure(factor, work), static_cast<long>(multiplicity));
    }
    if (sharp_enough(acc, precision)) return acc;
  }
  throw RootIsolationFailure("Mahler measure of " + f.to_string() + " not resolved within " +
                             std::to_string(kMeasurePrecisionCap) + " bits");
}

JensenEstimate mahler_measure_integral(const IntPolynomial& f, long initial_nodes, double tolerance,
                                       long max_nodes) {
  if (f.degree() < 1) throw DomainError("Mahler measure needs degree >= 1");
  if (initial_nodes < 1 || max_nodes < initial_nodes) throw DomainError("invalid node counts");
  std::vector<double> coeffs;
  for (const auto& c : f.coefficients()) coeffs.push_back(c.get_d());
  for (const auto& c : coeffs) {
    if (!std::isfinite(c)) throw DomainError("coefficients exceed the quadrature's floating range");
  }
  // Roots on the circle leave an error of exactly c/N once N is a multiple
  // of their order; one Richardson step 2*I(2N) - I(N) removes it.
  long nodes = initial_nodes;
  long double coarse = mean_log_modulus(coeffs, nodes);
  std::optional<long double> previous;
  while (nodes <= max_nodes / 2) {
    nodes *= 2;
    const long double fine = mean_log_modulus(coeffs, nodes);
    const long double current = std::exp(2.0L * fine - coarse);
    coarse = fine;
    if (previous) {
      const long double change = std::fabs(current - *previous) / current;
      if (change <= tolerance) {
        return JensenEstimate{static_cast<double>(current), static_cast<double>(change), nodes};
      }
    }
    previous = current;
  }
  throw QuadratureDivergence("quadrature for " + f.to_string() + " did not settle within " +
                             std::to_string(max_nodes) + " nodes");
}

}  // namespace mahlerkit::algnum
