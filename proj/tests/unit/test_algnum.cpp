#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "helpers.hpp"
#include "mahlerkit/algnum/algebraic.hpp"
#include "mahlerkit/algnum/height.hpp"
#include "mahlerkit/algnum/mahler.hpp"
#include "mahlerkit/algnum/polynomial.hpp"
#include "mahlerkit/algnum/roots.hpp"
#include "mahlerkit/errors.hpp"
#include "oracles.hpp"

using namespace mahlerkit;
using namespace mahlerkit::algnum;
using mahlerkit::testing::Gen;
using mahlerkit::testing::near;
using mahlerkit::testing::q;

namespace {

IntPolynomial poly(const std::string& text) { return IntPolynomial::parse(text); }

// (1 + sqrt 5) / 2 straight from MPFR.
long double golden() {
  return mahlerkit::testing::mpfr_eval(5, [](mpfr_ptr x) {
    mpfr_sqrt(x, x, MPFR_RNDN);
    mpfr_add_ui(x, x, 1, MPFR_RNDN);
    mpfr_div_ui(x, x, 2, MPFR_RNDN);
  });
}

}  // namespace

TEST(Polynomial, CanonicalForm) {
  const IntPolynomial f({Integer(4), Integer(-6), Integer(-2)});
  EXPECT_EQ(f.coefficients(), (std::vector<Integer>{-2, 3, 1}));
  EXPECT_EQ(f.degree(), 2);
  EXPECT_EQ(IntPolynomial({Integer(1), Integer(0), Integer(0)}).degree(), 0);
  EXPECT_THROW(IntPolynomial({Integer(0)}), DomainError);
}

TEST(Polynomial, ParseAndPrint) {
  EXPECT_EQ(poly("-1 - x + x^2").coefficients(), (std::vector<Integer>{-1, -1, 1}));
  EXPECT_EQ(poly("[ -1, -1, 1 ]"), poly("x^2 - x - 1"));
  EXPECT_EQ(poly("3*x^3 + 2x"), IntPolynomial({Integer(0), Integer(2), Integer(0), Integer(3)}));
  EXPECT_EQ(poly("x^2 - x - 1").to_string(), "-1 - x + x^2");
  EXPECT_EQ(poly("x^2 - x - 1").to_dense_string(), "[-1, -1, 1]");
  EXPECT_THROW(poly("x^"), ParseError);
  EXPECT_THROW(poly(""), ParseError);
  Gen gen(21);
  for (int i = 0; i < 200; ++i) {
    const IntPolynomial f(gen.polynomial(static_cast<int>(gen.integer(1, 8)), 50));
    EXPECT_EQ(IntPolynomial::parse(f.to_string()), f);
    EXPECT_EQ(IntPolynomial::parse(f.to_dense_string()), f);
  }
}

TEST(Polynomial, SquarefreeDecomposition) {
  // (x - 1)^2 (x + 2)
  const auto parts = squarefree_decomposition(poly("2 - 3x + x^3"));
  ASSERT_EQ(parts.size(), 2U);
  EXPECT_EQ(parts[0].first, poly("x + 2"));
  EXPECT_EQ(parts[0].second, 1);
  EXPECT_EQ(parts[1].first, poly("x - 1"));
  EXPECT_EQ(parts[1].second, 2);
  const auto [rest, zeros] = strip_zero_roots(poly("x^3 + x^2"));
  EXPECT_EQ(rest, poly("x + 1"));
  EXPECT_EQ(zeros, 2);
}

TEST(Roots, IsolationDisksContainRootsAndAreDisjoint) {
  const auto isolation = isolate_roots(poly("x^3 - 2"), 64);
  ASSERT_EQ(isolation.disks.size(), 3U);
  int real_count = 0;
  for (std::size_t i = 0; i < 3; ++i) real_count += certainly_real(isolation, i) ? 1 : 0;
  EXPECT_EQ(real_count, 1);
  auto found = rational_roots(poly("6x^2 - 5x + 1"));
  std::sort(found.begin(), found.end());
  EXPECT_EQ(found, (std::vector<Rational>{q("1/3"), q("1/2")}));
  found = rational_roots(poly("x^3 - x"));
  std::sort(found.begin(), found.end());
  EXPECT_EQ(found, (std::vector<Rational>{-1, 0, 1}));
  EXPECT_TRUE(rational_roots(poly("x^2 - 2")).empty());
}

TEST(MahlerMeasure, SpecExamples) {
  EXPECT_TRUE(mahler_measure_roots(poly("x - 2"), 64).contains(Rational(2)));
  EXPECT_TRUE(near(mahler_measure_roots(poly("x^2 - x - 1"), 128), golden(), 1e-18L));
  EXPECT_TRUE(mahler_measure_roots(poly("2x - 1"), 64).contains(Rational(2)));
  EXPECT_NEAR(mahler_measure_integral(poly("x - 2")).value, 2.0, 1e-8);
  EXPECT_NEAR(mahler_measure_integral(poly("x^2 - x - 1")).value, static_cast<double>(golden()), 1e-6);
  EXPECT_NEAR(mahler_measure_integral(poly("x")).value, 1.0, 1e-12);
}

TEST(MahlerMeasure, RadiusWithinRequestedPrecision) {
  Gen gen(22);
  for (int i = 0; i < 30; ++i) {
    const IntPolynomial f(gen.polynomial(static_cast<int>(gen.integer(1, 6)), 20));
    for (Precision p : {64, 128}) {
      const RealBall m = mahler_measure_roots(f, p);
      Mpfr limit(p);
      mpfr_mul_2si(limit.get(), m.mid().get(), 8 - p, MPFR_RNDD);
      EXPECT_LE(mpfr_cmp(m.rad().get(), limit.get()), 0) << f.to_string() << " at " << p;
    }
  }
}

TEST(MahlerMeasure, AgreesWithDurandKernerOracle) {
  Gen gen(23);
  for (int i = 0; i < 60; ++i) {
    const auto coefficients = gen.polynomial(static_cast<int>(gen.integer(1, 8)), 50);
    const IntPolynomial f(coefficients);
    const long double oracle = mahlerkit::testing::durand_kerner_measure(f.coefficients());
    EXPECT_TRUE(near(mahler_measure_roots(f, 128), oracle, 1e-9L * oracle)) << f.to_string();
  }
}

TEST(MahlerMeasure, JensenEquivalenceOnRandomPolynomials) {
  Gen gen(24);
  for (int i = 0; i < 60; ++i) {
    const IntPolynomial f(gen.polynomial(static_cast<int>(gen.integer(1, 8)), 50));
    const double by_roots = mahler_measure_roots(f, 128).to_double();
    const double by_integral = mahler_measure_integral(f, kDefaultQuadratureNodes, 1e-10).value;
    EXPECT_LT(std::abs(by_roots - by_integral) / by_roots, 1e-6) << f.to_string();
  }
}

TEST(MahlerMeasure, RepeatedRootsAndErrors) {
  // (x - 2)^2 has measure 4.
  EXPECT_TRUE(mahler_measure_roots(poly("x^2 - 4x + 4"), 64).contains(Rational(4)));
  EXPECT_THROW(mahler_measure_roots(IntPolynomial({Integer(3)}), 64), DomainError);
  // Roots on the circle: shifted nodes avoid them and the Richardson step
  // removes the 1/N error term.
  EXPECT_NEAR(mahler_measure_integral(poly("x - 1")).value, 1.0, 1e-6);
  EXPECT_NEAR(mahler_measure_integral(poly("x^2 + 1")).value, 1.0, 1e-6);
  EXPECT_THROW(mahler_measure_integral(poly("x - 2"), 0), DomainError);
}

TEST(Heights, RationalExamples) {
  EXPECT_TRUE(near(height_rational(Integer(2), Integer(1)), std::log(2.0L), 1e-18L));
  EXPECT_TRUE(near(height_rational(Integer(3), Integer(7)), std::log(7.0L), 1e-18L));
  EXPECT_TRUE(near(height_rational(Integer(6), Integer(4)), std::log(3.0L), 1e-18L));
  EXPECT_THROW(height_rational(Integer(1), Integer(0)), ZeroDenominator);
}

TEST(Heights, ProjectiveExamples) {
  const ProjectivePoint halves({q("1/2"), q("1/3")});
  EXPECT_EQ(halves.coordinates(), (std::vector<Integer>{3, 2}));
  EXPECT_TRUE(near(projective_height_rational(halves), std::log(3.0L), 1e-18L));
  EXPECT_TRUE(near(projective_height_rational(ProjectivePoint::parse("(1:2:3)")), std::log(3.0L), 1e-18L));
  EXPECT_TRUE(projective_height_rational(ProjectivePoint::parse("5:5")).contains(Rational(0)));
  EXPECT_EQ(ProjectivePoint::parse("(0:-4:6)").coordinates(), (std::vector<Integer>{0, 2, -3}));
  EXPECT_THROW(ProjectivePoint({Rational(0), Rational(0)}), ZeroVector);
}

// Height over Q as a sum over places: log max |x_i|_p over every prime
// dividing a numerator or denominator, plus the infinite place.
TEST(Heights, ProjectiveMatchesPlaceSum) {
  Gen gen(25);
  for (int i = 0; i < 100; ++i) {
    std::vector<Rational> point;
    for (int k = 0; k < 3; ++k) point.push_back(gen.nonzero_rational(30));
    long double total = 0;
    long double infinite = 0;
    for (const auto& x : point) infinite = std::max(infinite, std::fabs(static_cast<long double>(x.get_d())));
    total += std::log(infinite);
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L}) {
      long best = std::numeric_limits<long>::max();
      for (const auto& x : point) {
        long v = 0;
        Integer num = abs(x.get_num());
        Integer den = x.get_den();
        while (num % p == 0) num /= p, ++v;
        while (den % p == 0) den /= p, --v;
        best = std::min(best, v);
      }
      // log |x|_p = -v log p; the max over coordinates takes the least v.
      total += -static_cast<long double>(best) * std::log(static_cast<long double>(p));
    }
    EXPECT_TRUE(near(projective_height_rational(ProjectivePoint(point)), total, 1e-15L));
  }
}

TEST(Heights, RationalMatchesProjective) {
  Gen gen(26);
  for (int i = 0; i < 200; ++i) {
    const Rational x = gen.rational(1000);
    const RealBall a = height_rational(x.get_num(), x.get_den());
    const RealBall b = projective_height_rational(ProjectivePoint({Rational(1), x}));
    EXPECT_TRUE(a.overlaps(b));
  }
}

TEST(Heights, Subadditivity) {
  const Report concat = height_subadditivity_check({Rational(1), Rational(2)}, {Rational(1), Rational(3)});
  EXPECT_TRUE(concat.passed());
  EXPECT_TRUE(height_subadditivity_check({Rational(1), Rational(1)}, {Rational(1), Rational(1)}).passed());
  Gen gen(27);
  for (int i = 0; i < 200; ++i) {
    std::vector<Rational> a{Rational(1)}, b{Rational(1)};
    for (long k = gen.integer(1, 3); k > 0; --k) a.push_back(gen.rational(100));
    for (long k = gen.integer(1, 3); k > 0; --k) b.push_back(gen.rational(100));
    EXPECT_TRUE(height_subadditivity_check(a, b).passed());
  }
  EXPECT_THROW(height_subadditivity_check({Rational(2)}, {Rational(1)}), DomainError);
}

TEST(Heights, MultiplicativityOnRationals) {
  Gen gen(28);
  for (int i = 0; i < 500; ++i) {
    const Rational x = gen.nonzero_rational(1000);
    const Rational y = gen.nonzero_rational(1000);
    const long k = gen.integer(-5, 5);
    const RealBall hx = height_rational(x);
    const RealBall hy = height_rational(y);
    // Equality is common (coprime parts), so only a certain violation fails.
    EXPECT_FALSE(certainly_less((hx + hy).inflated(2), height_rational(x * y)));
    const RealBall hpow = height_rational(pow(x, k));
    EXPECT_TRUE(hpow.overlaps(hx * RealBall::from_long(std::labs(k))));
  }
}

TEST(Algebraic, IrreducibilityUpToDegreeThree) {
  EXPECT_TRUE(irreducible_over_rationals(poly("x^2 - 2")));
  EXPECT_FALSE(irreducible_over_rationals(poly("x^2 - 1")));
  EXPECT_TRUE(irreducible_over_rationals(poly("x^3 - 2")));
  EXPECT_FALSE(irreducible_over_rationals(poly("x^3 - 1")));
  EXPECT_THROW(irreducible_over_rationals(poly("x^4 + 1")), DomainError);
}

TEST(Algebraic, WeilHeightExamples) {
  EXPECT_TRUE(near(weil_height(AlgebraicNumber::from_rational(2), 64), std::log(2.0L), 1e-18L));
  EXPECT_TRUE(weil_height(AlgebraicNumber::from_rational(1), 64).contains(Rational(0)));
  const auto phi = AlgebraicNumber::nearest_root(poly("x^2 - x - 1"), 1.6);
  EXPECT_TRUE(near(weil_height(phi, 128), std::log(golden()) / 2, 1e-18L));
}

TEST(Algebraic, HeightVanishesOnUnitsAndSmallRootsOfUnity) {
  for (const char* r : {"0", "1", "-1"}) {
    EXPECT_TRUE(weil_height(AlgebraicNumber::from_rational(q(r)), 64).contains(Rational(0))) << r;
  }
  for (const char* f : {"x^2 + 1", "x^2 + x + 1", "x^2 - x + 1"}) {
    const auto z = AlgebraicNumber::nearest_root(poly(f), 0.0, 1.0);
    EXPECT_TRUE(weil_height(z, 64).contains(Rational(0))) << f;
  }
  Gen gen(29);
  for (int i = 0; i < 50; ++i) {
    const auto x = AlgebraicNumber::from_rational(gen.rational(100));
    EXPECT_TRUE(weil_height(x, 64).is_nonnegative());
  }
}

TEST(Algebraic, SelectorMustIsolateOneRoot) {
  const ComplexBall everything = ComplexBall::disk(Mpfr(0, 64), Mpfr(0, 64), Mpfr(10, 64), 64);
  EXPECT_THROW(AlgebraicNumber(poly("x^2 - 2"), everything), DomainError);
  EXPECT_THROW(AlgebraicNumber(poly("x^2 - 1"), everything), DomainError);
  const auto root2 = AlgebraicNumber::nearest_root(poly("x^2 - 2"), 1.4);
  EXPECT_TRUE(near(root2.enclosure(200).re(), std::sqrt(2.0L), 1e-18L));
  EXPECT_TRUE(near(log(root2, 128).re(), std::log(2.0L) / 2, 1e-18L));
}
