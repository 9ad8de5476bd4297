#pragma once

#include <map>
#include <optional>
#include <string>

#include "mahlerkit/adaptive.hpp"
#include "mahlerkit/ball.hpp"
#include "mahlerkit/exact.hpp"
#include "mahlerkit/report.hpp"

namespace mahlerkit::bounds {

// r(m+n)/(mn).
Rational theta(long m, long n, long r);
// mn/(mn - r(m+n)); DegenerateExponent when mn <= r(m+n).
Rational kappa(long m, long n, long r);

struct BoundContext {
  long m = 1;
  long n = 1;
  long r = 1;
  long D = 1;
  std::optional<Rational> h;
  std::optional<Rational> h1;
  std::optional<Rational> h2;
  // Named user constants: c, c0, c1, c2, ...
  std::map<std::string, Rational> constants;
  PrecisionPolicy precision;

  // Throws DomainError when an integer field is out of range.
  void check_shape() const;
  // Throws DomainError naming the missing field.
  const Rational& require_h() const;
  const Rational& require_h1() const;
  const Rational& require_h2() const;
  // Throws MissingConstant.
  const Rational& constant(const std::string& name) const;
};

// Data about the operands of a linear form, each evaluable at any precision.
// Absent entries skip their hypothesis rows.
struct OperandData {
  std::optional<LazyReal> height_alpha;  // max h(alpha_i)
  std::optional<LazyReal> abs_log;       // max |lambda_i|
  std::optional<LazyReal> height_beta;   // max h(beta_i)
};

enum class Status { kProven, kParametric, kConjectural };

std::string to_string(Status status);

// A bound or exponent quantity, kept as its natural logarithm.
struct BoundResult {
  std::string formula;
  RealBall log_value;
  // 1 or 2 for the piecewise exponent, otherwise 0.
  int branch = 0;
  Status status = Status::kProven;
  Report hypotheses;

  RealBall value() const { return exp(log_value); }
};

// Returns Phi_1 (not a bound); branch 1 when Dh1 >= (Dh2)^(1-theta), decided
// exactly.
BoundResult phi1(const BoundContext& ctx);
// Value of the given branch regardless of which one applies.
BoundResult phi1_branch(const BoundContext& ctx, int branch);
// (Dh)^kappa.
BoundResult phi2(const BoundContext& ctx);

// a^(-exponent * log log a).
BoundResult bound_mahler_log(const Integer& a, const Rational& exponent = 40,
                             const PrecisionPolicy& policy = {});
// b^(-exponent * b).
BoundResult bound_mahler_exp(const Integer& b, const Rational& exponent = 40,
                             const PrecisionPolicy& policy = {});

// Parameter and operand rows for the two-logarithm bound.
Report validate_nw(const BoundContext& ctx, const OperandData& data = {});
// exp(-2e6 D^3 h1 h2 (log D + 1)); throws HypothesisViolation carrying the
// first failing row of validate_nw.
BoundResult bound_nw(const BoundContext& ctx, const OperandData& data = {});

// exp(-c D^(2+1/m) (h + log D + 1) / (log D + 1)).
BoundResult bound_feldman(long m, long D, const LazyReal& h, const LazyReal& c,
                          const PrecisionPolicy& policy = {});
// exp(-c D^(2+1/m) h1 h2 (log h1 + log h2 + 2 log D + 1)^(1/m)); DomainError
// when the bracket is not positive.
BoundResult bound_rw(long m, long D, const LazyReal& h1, const LazyReal& h2, const LazyReal& c,
                     const PrecisionPolicy& policy = {});

// which = 0: exp(-c0 D^2 h); 1: exp(-c1 m D^2 h); 2: exp(-c2 m D^(1+1/m) h).
BoundResult bound_conjecture(int which, const BoundContext& ctx, const OperandData& data = {});

// 2^(-D) exp(-m D S h1).
BoundResult liouville_linear_form(long m, long D, long S, const LazyReal& h1,
                                  const PrecisionPolicy& policy = {});

// A lazy constant for an exact rational.
LazyReal exact(const Rational& value);

// Parses "p/q", decimals, "e", "e^x", "k*e^x" and "pi" into a lazy real.
LazyReal parse_real(const std::string& text);

}  // namespace mahlerkit::bounds
