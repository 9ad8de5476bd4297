#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "mahlerkit/ball.hpp"
#include "mahlerkit/exact.hpp"

namespace mahlerkit::testing {

inline Rational q(const std::string& text) { return parse_rational(text); }

// |mid(ball) - expected| <= tol * max(1, |expected|) and the ball is not
// absurdly wide.
inline ::testing::AssertionResult near(const RealBall& ball, long double expected, long double tol) {
  const long double mid = ball.mid().to_long_double();
  const long double scale = std::max(1.0L, std::fabs(expected));
  if (std::fabs(mid - expected) <= tol * scale) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << ball.to_string() << " is not within " << static_cast<double>(tol)
                                       << " of " << static_cast<double>(expected);
}

inline ::testing::AssertionResult encloses(const RealBall& ball, const Rational& value) {
  if (ball.contains(value)) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << ball.to_string(30) << " does not contain " << to_string(value);
}

}  // namespace mahlerkit::testing
