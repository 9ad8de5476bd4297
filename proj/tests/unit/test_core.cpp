#include <gtest/gtest.h>

#include <atomic>
#include <vector>

#include "generators.hpp"
#include "helpers.hpp"
#include "mahlerkit/adaptive.hpp"
#include "mahlerkit/ball.hpp"
#include "mahlerkit/errors.hpp"
#include "mahlerkit/exact.hpp"
#include "mahlerkit/parallel.hpp"

using namespace mahlerkit;
using mahlerkit::testing::Gen;
using mahlerkit::testing::encloses;
using mahlerkit::testing::q;

TEST(Exact, ParsesFractionsDecimalsAndIntegers) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_EQ(parse_rational("  12 "), Rational(12));
  EXPECT_EQ(parse_rational("1.5e2"), Rational(150));
  EXPECT_THROW(parse_rational("1/0"), ZeroDenominator);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_integer("1.5"), ParseError);
}

TEST(Exact, PrintParseRoundTrip) {
  Gen gen(11);
  for (int i = 0; i < 500; ++i) {
    const Rational x = gen.rational(1000000);
    EXPECT_EQ(parse_rational(to_string(x)), x);
  }
}

TEST(Exact, RoundingHelpers) {
  EXPECT_EQ(floor(q("-3/2")), -2);
  EXPECT_EQ(ceil(q("-3/2")), -1);
  EXPECT_EQ(round_half_even(q("1/2")), 0);
  EXPECT_EQ(round_half_even(q("3/2")), 2);
  EXPECT_EQ(round_half_even(q("-5/2")), -2);
  EXPECT_EQ(round_half_even(q("7/3")), 2);
  EXPECT_EQ(factorial(5), 120);
  EXPECT_EQ(binomial(Integer(10), 3), 120);
  EXPECT_EQ(integer_root(Integer(1000), 3), 10);
  EXPECT_EQ(integer_root(Integer(999), 3), 9);
  EXPECT_EQ(pow(q("2/3"), -2), q("9/4"));
}

TEST(Ball, ArithmeticEnclosesExactRationalResults) {
  Gen gen(12);
  for (int i = 0; i < 1000; ++i) {
    const Rational a = gen.rational(1000);
    const Rational b = gen.nonzero_rational(1000);
    const RealBall x = RealBall::from_rational(a, 53);
    const RealBall y = RealBall::from_rational(b, 53);
    EXPECT_TRUE(encloses(x + y, a + b));
    EXPECT_TRUE(encloses(x - y, a - b));
    EXPECT_TRUE(encloses(x * y, a * b));
    EXPECT_TRUE(encloses(x / y, a / b));
    EXPECT_TRUE(encloses(abs(x), abs(a)));
    EXPECT_TRUE(encloses(sqr(x), a * a));
    EXPECT_TRUE(encloses(pow(y, 3L), b * b * b));
  }
}

TEST(Ball, TranscendentalsEncloseHighPrecisionValues) {
  Gen gen(13);
  for (int i = 0; i < 300; ++i) {
    const Rational a = abs(gen.nonzero_rational(500));
    const RealBall x = RealBall::from_rational(a, 64);
    const RealBall wide = RealBall::from_rational(a, 1024);
    // The 1024-bit results are far narrower than the 64-bit ones, so their
    // midpoints stand in for the exact values.
    EXPECT_TRUE(log(x).contains(log(wide).mid().to_rational()));
    EXPECT_TRUE(exp(x / RealBall::from_long(50, 64)).contains(exp(wide / RealBall::from_long(50, 1024)).mid().to_rational()));
    EXPECT_TRUE(sqrt(x).contains(sqrt(wide).mid().to_rational()));
  }
}

TEST(Ball, DoubledPrecisionStaysInsideInflatedOriginal) {
  Gen gen(14);
  for (int i = 0; i < 300; ++i) {
    const Rational a = abs(gen.nonzero_rational(500));
    const Rational b = gen.nonzero_rational(500);
    auto compute = [&](Precision p) {
      const RealBall x = RealBall::from_rational(a, p);
      const RealBall y = RealBall::from_rational(b, p);
      return log(x) * y + exp(y / RealBall::from_long(100, p));
    };
    const RealBall coarse = compute(64);
    const RealBall fine = compute(128);
    EXPECT_TRUE(coarse.inflated(2.0).contains(fine)) << coarse.to_string() << " vs " << fine.to_string();
  }
}

TEST(Ball, PrintedTextEnclosesBall) {
  const RealBall third = RealBall::from_rational(q("1/3"), 64);
  const std::string text = third.to_string(5);
  const auto split = text.find("±");
  ASSERT_NE(split, std::string::npos);
  const Rational mid = parse_rational(text.substr(0, split));
  const Rational rad = parse_rational(text.substr(split + std::string("±").size()));
  EXPECT_LE(mid - rad, q("1/3"));
  EXPECT_GE(mid + rad, q("1/3"));
}

TEST(Ball, ComplexLogAndAbs) {
  const ComplexBall z(RealBall::from_long(3), RealBall::from_long(4));
  EXPECT_TRUE(abs(z).contains(Rational(5)));
  const ComplexBall l = log(z);
  EXPECT_TRUE(mahlerkit::testing::near(l.re(), std::log(5.0L), 1e-15L));
  EXPECT_TRUE(mahlerkit::testing::near(l.im(), std::atan2(4.0L, 3.0L), 1e-15L));
}

TEST(Adaptive, RefineDoublesUntilCertified) {
  std::vector<Precision> seen;
  const PrecisionPolicy policy{64, 1024};
  const Precision got = refine(policy, "test", [&](Precision p) -> std::optional<Precision> {
    seen.push_back(p);
    if (p >= 256) return p;
    return std::nullopt;
  });
  EXPECT_EQ(got, 256);
  EXPECT_EQ(seen, (std::vector<Precision>{64, 128, 256}));
  EXPECT_THROW(refine(policy, "never", [](Precision) -> std::optional<int> { return std::nullopt; }),
               PrecisionBudgetExceeded);
}

TEST(Adaptive, DecisionsAreUndecidedOnOverlap) {
  const RealBall one = RealBall::from_long(1);
  const RealBall two = RealBall::from_long(2);
  EXPECT_EQ(decide_less(one, two), Decision::kTrue);
  EXPECT_EQ(decide_less(two, one), Decision::kFalse);
  EXPECT_EQ(decide_less_equal(one, one), Decision::kTrue);
  const RealBall fuzzy = one.with_added_radius(Mpfr(1, 64));
  EXPECT_EQ(decide_less(fuzzy, RealBall::from_rational(q("3/2"))), Decision::kUnknown);
}

TEST(Executor, RethrowsLowestFailingIndexAndVisitsAll) {
  const Executor executor(4);
  std::atomic<int> visits{0};
  try {
    executor.for_each(100, [&](std::size_t i) {
      ++visits;
      if (i == 37 || i == 80) throw DomainError("index " + std::to_string(i));
    });
    FAIL() << "expected an exception";
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "index 37");
  }
  EXPECT_EQ(visits.load(), 100);
}
