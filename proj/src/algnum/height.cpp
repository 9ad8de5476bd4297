#include "mahlerkit/algnum/height.hpp"

#include <sstream>

#include "mahlerkit/errors.hpp"

namespace mahlerkit::algnum {

ProjectivePoint::ProjectivePoint(const std::vector<Rational>& coordinates) {
  Integer den = 1;
  for (const auto& c : coordinates) den = lcm(den, Integer(c.get_den()));
  Integer content = 0;
  coordinates_.reserve(coordinates.size());
  for (const auto& c : coordinates) {
    const Rational scaled = c * den;
    coordinates_.emplace_back(scaled.get_num());
    content = gcd(content, coordinates_.back());
  }
  if (content == 0) throw ZeroVector();
  for (const auto& x : coordinates_) {
    if (x != 0) {
      if (x < 0) content = -content;
      break;
    }
  }
  for (auto& x : coordinates_) x /= content;
}

ProjectivePoint ProjectivePoint::parse(std::string_view text) {
  std::string s(text);
  if (!s.empty() && (s.front() == '(' || s.front() == '[')) s.erase(s.begin());
  if (!s.empty() && (s.back() == ')' || s.back() == ']')) s.pop_back();
  const char separator = s.find(':') != std::string::npos ? ':' : ',';
  std::vector<Rational> coords;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, separator)) coords.push_back(parse_rational(item));
  if (coords.empty()) throw ParseError("empty projective point");
  return ProjectivePoint(coords);
}

Integer ProjectivePoint::naive_height() const {
  Integer best = 0;
  for (const auto& x : coordinates_) {
    const Integer size = abs(x);
    if (size > best) best = size;
  }
  return best;
}

std::string ProjectivePoint::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coordinates_.size(); ++i) {
    if (i != 0) out += ":";
    out += coordinates_[i].get_str();
  }
  return out + ")";
}

Integer naive_height(const Rational& value) {
  const Integer p = abs(value.get_num());
  const Integer q = value.get_den();
  return p > q ? p : q;
}

RealBall height_rational(const Integer& numerator, const Integer& denominator, Precision prec) {
  if (denominator == 0) throw ZeroDenominator();
  Rational value(numerator, denominator);
  value.canonicalize();
  return height_rational(value, prec);
}

RealBall height_rational(const Rational& value, Precision prec) {
  return log(RealBall::from_integer(naive_height(value), prec));
}

RealBall projective_height_rational(const ProjectivePoint& point, Precision prec) {
  return log(RealBall::from_integer(point.naive_height(), prec));
}

RealBall projective_height_upper_bound(const std::vector<Rational>& coordinates, Precision prec) {
  RealBall sum = RealBall::from_long(0, prec);
  for (const auto& c : coordinates) sum = sum + height_rational(c, prec);
  return sum;
}

Report height_subadditivity_check(const std::vector<Rational>& first, const std::vector<Rational>& second,
                                  Precision prec) {
  if (first.empty() || second.empty() || first.front() != 1 || second.front() != 1) {
    throw DomainError("both tuples must start with the coordinate 1");
  }
  std::vector<Rational> joined = first;
  joined.insert(joined.end(), std::next(second.begin()), second.end());
  const ProjectivePoint a(first), b(second), both(joined);
  const Integer lhs = both.naive_height();
  const Integer rhs = a.naive_height() * b.naive_height();
  Report report;
  report.rows.push_back(CheckRow{
      "h" + both.to_string() + " <= h" + a.to_string() + " + h" + b.to_string(),
      projective_height_rational(both, prec).to_string(),
      (projective_height_rational(a, prec) + projective_height_rational(b, prec)).to_string(), "<=",
      lhs <= rhs, "exact: " + lhs.get_str() + " <= " + rhs.get_str()});
  return report;
}

}  // namespace mahlerkit::algnum
