#pragma once

#include <string>
#include <vector>

#include "mahlerkit/ball.hpp"
#include "mahlerkit/exact.hpp"
#include "mahlerkit/report.hpp"

namespace mahlerkit::algnum {

// Point of projective space over Q, kept as a coprime integer vector whose
// first nonzero entry is positive.
class ProjectivePoint {
 public:
  // Throws ZeroVector when every coordinate is zero.
  explicit ProjectivePoint(const std::vector<Rational>& coordinates);
  static ProjectivePoint parse(std::string_view text);

  const std::vector<Integer>& coordinates() const { return coordinates_; }
  std::size_t size() const { return coordinates_.size(); }

  // max |x_i| of the canonical representative.
  Integer naive_height() const;

  // "(x0:x1:...)".
  std::string to_string() const;

  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;

 private:
  std::vector<Integer> coordinates_;
};

// max(|p|, |q|) for p/q in lowest terms.
Integer naive_height(const Rational& value);

// log max(|p|, |q|) after reduction. Throws ZeroDenominator for q = 0.
RealBall height_rational(const Integer& numerator, const Integer& denominator,
                         Precision prec = kDefaultPrecision);
RealBall height_rational(const Rational& value, Precision prec = kDefaultPrecision);

RealBall projective_height_rational(const ProjectivePoint& point, Precision prec = kDefaultPrecision);

// Sum of the heights of the coordinates: an upper bound for the projective
// height of (x0:...:xN).
RealBall projective_height_upper_bound(const std::vector<Rational>& coordinates,
                                       Precision prec = kDefaultPrecision);

// h(1:x:y) <= h(1:x) + h(1:y) for two tuples that start with 1; the
// comparison is exact (H(concat) <= H(first) * H(second)).
Report height_subadditivity_check(const std::vector<Rational>& first, const std::vector<Rational>& second,
                                  Precision prec = kDefaultPrecision);

}  // namespace mahlerkit::algnum
