#pragma once

#include "mahlerkit/algnum/polynomial.hpp"
#include "mahlerkit/ball.hpp"

namespace mahlerkit::algnum {

// Certified M(f) = lead(f) * prod max(1, |root|), roots counted with
// multiplicity. The radius is at most 2^(8 - precision) times the midpoint.
// Throws RootIsolationFailure past the precision budget.
RealBall mahler_measure_roots(const IntPolynomial& f, Precision precision);

// Uncertified value of exp(mean of log|f| over the unit circle).
struct JensenEstimate {
  double value = 0.0;
  // |difference| between the last two node counts, relative to value.
  double error_estimate = 0.0;
  long nodes = 0;
};

inline constexpr long kDefaultQuadratureNodes = 64;
inline constexpr long kMaxQuadratureNodes = 1L << 27;

// Trapezoid rule on shifted nodes t_k = (k + phi) / N, phi the fractional
// part of the golden ratio, so no root of unity is ever a node. N doubles
// until two successive estimates agree to `tolerance` (relative). Raises
// QuadratureDivergence when `max_nodes` is reached first.
JensenEstimate mahler_measure_integral(const IntPolynomial& f, long initial_nodes = kDefaultQuadratureNodes,
                                       double tolerance = 1e-8, long max_nodes = kMaxQuadratureNodes);

}  // namespace mahlerkit::algnum
