#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mahlerkit/ball.hpp"
#include "mahlerkit/exact.hpp"

namespace mahlerkit::algnum {

// Primitive integer polynomial in canonical form: coefficients constant term
// first, content 1, positive leading coefficient.
class IntPolynomial {
 public:
  // Canonicalizes: trailing zeros dropped, content divided out, sign fixed.
  // Throws DomainError for the zero polynomial.
  explicit IntPolynomial(std::vector<Integer> coefficients);

  // Minimal polynomial q*X - p of the rational p/q.
  static IntPolynomial from_rational(const Rational& value);

  // Accepts "c0 + c1*x + c2*x^2 + ..." or a dense list "[c0, c1, ...]".
  static IntPolynomial parse(std::string_view text);

  const std::vector<Integer>& coefficients() const { return coefficients_; }
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  const Integer& leading() const { return coefficients_.back(); }
  const Integer& constant_term() const { return coefficients_.front(); }

  // "c0 + c1*x + c2*x^2", zero terms omitted.
  std::string to_string() const;
  // "[c0, c1, ...]".
  std::string to_dense_string() const;

  Rational evaluate(const Rational& x) const;
  RealBall evaluate(const RealBall& x) const;
  ComplexBall evaluate(const ComplexBall& x) const;

  // Coefficients of f' (not canonicalized).
  std::vector<Integer> derivative_coefficients() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  std::vector<Integer> coefficients_;
};

// Yun's algorithm over Q. Returns (g_k, k) with g_k squarefree, pairwise
// coprime and f = prod g_k^k up to a sign.
std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& f);

// Exact quotient of f by its largest power of X; the exponent is returned.
std::pair<IntPolynomial, int> strip_zero_roots(const IntPolynomial& f);

}  // namespace mahlerkit::algnum
