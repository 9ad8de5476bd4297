#include "mahlerkit/algnum/polynomial.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "mahlerkit/errors.hpp"

namespace mahlerkit::algnum {

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

QPoly to_qpoly(const std::vector<Integer>& c) {
  QPoly out;
  out.reserve(c.size());
  for (const auto& x : c) out.emplace_back(x);
  return out;
}

QPoly derivative(const QPoly& p) {
  QPoly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<long>(i));
  trim(out);
  return out;
}

QPoly make_monic(QPoly p) {
  trim(p);
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

// Quotient and remainder; divisor must be nonzero.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  const int db = degree(b);
  if (degree(a) < db) return {QPoly{}, a};
  QPoly q(static_cast<std::size_t>(degree(a) - db + 1));
  for (int i = degree(a); i >= db; --i) {
    const Rational coef = a[static_cast<std::size_t>(i)] / b.back();
    q[static_cast<std::size_t>(i - db)] = coef;
    if (coef == 0) continue;
    for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(i - db + j)] -= coef * b[static_cast<std::size_t>(j)];
  }
  a.resize(static_cast<std::size_t>(db));
  trim(a);
  trim(q);
  return {q, a};
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

QPoly exact_div(const QPoly& a, const QPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.empty()) throw DomainError("internal: inexact polynomial division");
  return q;
}

QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

IntPolynomial to_primitive(const QPoly& p) {
  Integer den = 1;
  for (const auto& c : p) den = lcm(den, Integer(c.get_den()));
  std::vector<Integer> coeffs;
  coeffs.reserve(p.size());
  for (const auto& c : p) {
    const Rational scaled = c * den;
    coeffs.emplace_back(scaled.get_num());
  }
  return IntPolynomial(std::move(coeffs));
}

// --- parsing ---------------------------------------------------------------

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

IntPolynomial parse_dense(std::string_view text) {
  std::string s = strip_spaces(text);
  if (!s.empty() && s.front() == '[') s.erase(s.begin());
  if (!s.empty() && s.back() == ']') s.pop_back();
  std::vector<Integer> coeffs;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) coeffs.push_back(parse_integer(item));
  if (coeffs.empty()) throw ParseError("empty coefficient list");
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial parse_expression(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw ParseError("empty polynomial");
  std::map<long, Integer> terms;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      throw ParseError("expected '+' or '-' in '" + s + "'");
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    const std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw ParseError("empty term in '" + s + "'");
    pos = end;

    Integer coef = 1;
    long power = 0;
    const auto x = term.find_first_of("xX");
    if (x == std::string::npos) {
      coef = parse_integer(term);
    } else {
      std::string head = term.substr(0, x);
      if (!head.empty() && head.back() == '*') head.pop_back();
      if (!head.empty()) coef = parse_integer(head);
      const std::string tail = term.substr(x + 1);
      if (tail.empty()) {
        power = 1;
      } else if (tail.front() == '^' && tail.size() > 1) {
        const Integer p = parse_integer(tail.substr(1));
        if (p < 0 || !p.fits_slong_p()) throw ParseError("bad exponent in '" + term + "'");
        power = p.get_si();
      } else {
        throw ParseError("bad term '" + term + "'");
      }
    }
    terms[power] += sign * coef;
  }
  std::vector<Integer> coeffs(static_cast<std::size_t>(terms.rbegin()->first + 1), Integer(0));
  for (const auto& [power, coef] : terms) coeffs[static_cast<std::size_t>(power)] = coef;
  return IntPolynomial(std::move(coeffs));
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<Integer> coefficients) : coefficients_(std::move(coefficients)) {
  while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
  if (coefficients_.empty()) throw DomainError("the zero polynomial has no canonical form");
  Integer content = 0;
  for (const auto& c : coefficients_) content = gcd(content, c);
  if (coefficients_.back() < 0) content = -content;
  for (auto& c : coefficients_) c /= content;
}

IntPolynomial IntPolynomial::from_rational(const Rational& value) {
  return IntPolynomial({Integer(-value.get_num()), Integer(value.get_den())});
}

IntPolynomial IntPolynomial::parse(std::string_view text) {
  if (text.find_first_of("xX") != std::string_view::npos) return parse_expression(text);
  return parse_dense(text);
}

std::string IntPolynomial::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    const Integer& c = coefficients_[i];
    if (c == 0) continue;
    const Integer magnitude = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (i == 0 || magnitude != 1) out += magnitude.get_str() + (i == 0 ? "" : "*");
    if (i == 1) out += "x";
    if (i >= 2) out += "x^" + std::to_string(i);
  }
  return out;
}

std::string IntPolynomial::to_dense_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (i != 0) out += ", ";
    out += coefficients_[i].get_str();
  }
  return out + "]";
}

Rational IntPolynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

RealBall IntPolynomial::evaluate(const RealBall& x) const {
  const Precision prec = x.precision();
  RealBall acc = RealBall::from_integer(coefficients_.back(), prec);
  for (auto it = std::next(coefficients_.rbegin()); it != coefficients_.rend(); ++it) {
    acc = acc * x + RealBall::from_integer(*it, prec);
  }
  return acc;
}

ComplexBall IntPolynomial::evaluate(const ComplexBall& x) const {
  const Precision prec = x.precision();
  ComplexBall acc(RealBall::from_integer(coefficients_.back(), prec));
  for (auto it = std::next(coefficients_.rbegin()); it != coefficients_.rend(); ++it) {
    acc = acc * x + ComplexBall(RealBall::from_integer(*it, prec));
  }
  return acc;
}

std::vector<Integer> IntPolynomial::derivative_coefficients() const {
  std::vector<Integer> out;
  for (std::size_t i = 1; i < coefficients_.size(); ++i) out.push_back(coefficients_[i] * static_cast<long>(i));
  if (out.empty()) out.emplace_back(0);
  return out;
}

std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& f) {
  std::vector<std::pair<IntPolynomial, int>> out;
  if (f.degree() == 0) return out;
  const QPoly p = to_qpoly(f.coefficients());
  const QPoly dp = derivative(p);
  const QPoly a0 = gcd(p, dp);
  QPoly b = exact_div(p, a0);
  QPoly c = exact_div(dp, a0);
  QPoly d = sub(c, derivative(b));
  for (int i = 1; degree(b) > 0; ++i) {
    const QPoly a = gcd(b, d);
    if (degree(a) > 0) out.emplace_back(to_primitive(a), i);
    b = exact_div(b, a);
    c = exact_div(d, a);
    d = sub(c, derivative(b));
  }
  return out;
}

std::pair<IntPolynomial, int> strip_zero_roots(const IntPolynomial& f) {
  const auto& c = f.coefficients();
  std::size_t k = 0;
  while (k < c.size() && c[k] == 0) ++k;
  return {IntPolynomial(std::vector<Integer>(c.begin() + static_cast<long>(k), c.end())), static_cast<int>(k)};
}

}  // namespace mahlerkit::algnum
