#include "mahlerkit/bounds/bounds.hpp"

#include <sstream>

#include "mahlerkit/errors.hpp"

namespace mahlerkit::bounds {

using mahlerkit::to_string;

namespace {

constexpr long kLogRadiusBits = 20;

constexpr Precision kSettleGuardBits = 32;

// Evaluates a log-space quantity until its radius is below 2^-20, so the
// exponentiated value has relative accuracy better than about 2^-20. The
// work runs with guard bits and the midpoint is rounded to the working
// precision, so two formulas for one value land within an ulp.
BoundResult settle(std::string formula, Status status, const PrecisionPolicy& policy,
                   const std::function<RealBall(Precision)>& log_at) {
  RealBall log_value = refine(policy, formula, [&](Precision prec) -> std::optional<RealBall> {
    RealBall value = log_at(prec + kSettleGuardBits).with_precision(prec);
    Mpfr limit(kRadiusPrecision);
    mpfr_set_ui_2exp(limit.get(), 1, -kLogRadiusBits, MPFR_RNDN);
    if (mpfr_less_p(value.rad().get(), limit.get())) return value;
    return std::nullopt;
  });
  return BoundResult{std::move(formula), std::move(log_value), 0, status, {}};
}

RealBall ball(const Rational& value, Precision prec) { return RealBall::from_rational(value, prec); }
RealBall ball(long value, Precision prec) { return RealBall::from_long(value, prec); }

void require_positive(const Rational& value, const std::string& name) {
  if (value <= 0) throw DomainError(name + " must be positive");
}

// Certified comparison lhs >= rhs, refined until decided.
CheckRow geq_row(const std::string& name, const LazyReal& lhs, const LazyReal& rhs,
                 const PrecisionPolicy& policy) {
  return refine(policy, name, [&](Precision prec) -> std::optional<CheckRow> {
    const RealBall a = lhs(prec);
    const RealBall b = rhs(prec);
    const Decision d = decide_less_equal(b, a);
    if (d == Decision::kUnknown) return std::nullopt;
    return CheckRow{name, a.to_string(), b.to_string(), ">=", d == Decision::kTrue, ""};
  });
}

CheckRow exact_geq_row(const std::string& name, const Rational& lhs, const Rational& rhs) {
  return CheckRow{name, to_string(lhs), to_string(rhs), ">=", lhs >= rhs, "exact"};
}

Rational product(long a, const Rational& b) { return Rational(a) * b; }

}  // namespace

Rational theta(long m, long n, long r) {
  if (m < 1 || n < 1 || r < 1) throw DomainError("m, n and r must be positive");
  Rational out(Integer(r) * (Integer(m) + n), Integer(m) * n);
  out.canonicalize();
  return out;
}

Rational kappa(long m, long n, long r) {
  if (m < 1 || n < 1 || r < 1) throw DomainError("m, n and r must be positive");
  const Integer mn = Integer(m) * n;
  const Integer gap = mn - Integer(r) * (Integer(m) + n);
  if (gap <= 0) {
    throw DegenerateExponent("kappa needs mn > r(m+n); got mn = " + mn.get_str() + ", r(m+n) = " +
                             Integer(Integer(r) * (Integer(m) + n)).get_str());
  }
  Rational out(mn, gap);
  out.canonicalize();
  return out;
}

std::string to_string(Status status) {
  switch (status) {
    case Status::kProven:
      return "proven";
    case Status::kParametric:
      return "parametric";
    case Status::kConjectural:
      return "conjectural";
  }
  return "unknown";
}

void BoundContext::check_shape() const {
  if (m < 1 || n < 1 || r < 1 || D < 1) throw DomainError("m, n, r and D must be at least 1");
  if (r > std::min(m, n)) throw DomainError("r must not exceed min(m, n)");
}

const Rational& BoundContext::require_h() const {
  if (!h) throw DomainError("h is required");
  require_positive(*h, "h");
  return *h;
}

const Rational& BoundContext::require_h1() const {
  if (!h1) throw DomainError("h1 is required");
  require_positive(*h1, "h1");
  return *h1;
}

const Rational& BoundContext::require_h2() const {
  if (!h2) throw DomainError("h2 is required");
  require_positive(*h2, "h2");
  return *h2;
}

const Rational& BoundContext::constant(const std::string& name) const {
  const auto it = constants.find(name);
  if (it == constants.end()) throw MissingConstant(name);
  return it->second;
}

// --- exponent quantities ----------------------------------------------------

BoundResult phi1_branch(const BoundContext& ctx, int branch) {
  ctx.check_shape();
  const Rational x = product(ctx.D, ctx.require_h1());
  const Rational y = product(ctx.D, ctx.require_h2());
  const Rational t = theta(ctx.m, ctx.n, ctx.r);
  const Rational rest = 1 - t;
  if (branch == 1) {
    return settle("Dh1 (Dh2)^theta", Status::kParametric, ctx.precision, [&](Precision prec) {
      return log(ball(x, prec)) + ball(t, prec) * log(ball(y, prec));
    });
  }
  if (branch != 2) throw DomainError("phi1 has branches 1 and 2");
  if (rest <= 0) {
    throw DegenerateExponent("theta = " + to_string(t) + " >= 1: (Dh1)^(1/(1-theta)) is undefined");
  }
  return settle("(Dh1)^(1/(1-theta))", Status::kParametric, ctx.precision, [&](Precision prec) {
    return log(ball(x, prec)) / ball(rest, prec);
  });
}

BoundResult phi1(const BoundContext& ctx) {
  ctx.check_shape();
  const Rational x = product(ctx.D, ctx.require_h1());
  const Rational y = product(ctx.D, ctx.require_h2());
  const Rational rest = 1 - theta(ctx.m, ctx.n, ctx.r);
  // Dh1 >= (Dh2)^(a/b) <=> (Dh1)^b >= (Dh2)^a, or (Dh1)^b (Dh2)^-a >= 1.
  const long a = to_long(rest.get_num());
  const long b = to_long(rest.get_den());
  bool high = false;
  if (a == 0) {
    high = x >= 1;
  } else if (a > 0) {
    high = pow(x, b) >= pow(y, a);
  } else {
    high = pow(x, b) * pow(y, -a) >= 1;
  }
  BoundResult out = phi1_branch(ctx, high ? 1 : 2);
  out.branch = high ? 1 : 2;
  out.hypotheses.rows.push_back(CheckRow{"Dh1 >= (Dh2)^(1-theta)", to_string(x),
                                         to_string(y) + "^(" + to_string(rest) + ")", ">=", high,
                                         "decides the branch"});
  return out;
}

BoundResult phi2(const BoundContext& ctx) {
  ctx.check_shape();
  const Rational k = kappa(ctx.m, ctx.n, ctx.r);
  const Rational base = product(ctx.D, ctx.require_h());
  return settle("(Dh)^kappa", Status::kParametric, ctx.precision,
                [&](Precision prec) { return ball(k, prec) * log(ball(base, prec)); });
}

// --- bounds -----------------------------------------------------------------

BoundResult bound_mahler_log(const Integer& a, const Rational& exponent, const PrecisionPolicy& policy) {
  if (a <= 2) throw DomainError("a must be at least 3 (log log a > 0)");
  return settle("a^(-exponent log log a)", Status::kProven, policy, [&](Precision prec) {
    const RealBall log_a = log(RealBall::from_integer(a, prec));
    return -(ball(exponent, prec) * log(log_a) * log_a);
  });
}

BoundResult bound_mahler_exp(const Integer& b, const Rational& exponent, const PrecisionPolicy& policy) {
  if (b < 2) throw DomainError("b must be at least 2");
  return settle("b^(-exponent b)", Status::kProven, policy, [&](Precision prec) {
    const RealBall bb = RealBall::from_integer(b, prec);
    return -(ball(exponent, prec) * bb * log(bb));
  });
}

Report validate_nw(const BoundContext& ctx, const OperandData& data) {
  ctx.check_shape();
  const Rational h1 = ctx.require_h1();
  const Rational h2 = ctx.require_h2();
  const Rational D(ctx.D);
  const PrecisionPolicy& policy = ctx.precision;
  Report report;
  if (data.height_alpha) report.rows.push_back(geq_row("h1 >= h(alpha)", exact(h1), *data.height_alpha, policy));
  if (data.abs_log) {
    const LazyReal scaled = [&](Precision prec) { return (*data.abs_log)(prec) / ball(D, prec); };
    report.rows.push_back(geq_row("h1 >= |lambda|/D", exact(h1), scaled, policy));
  }
  report.rows.push_back(exact_geq_row("h1 >= 1/D", h1, 1 / D));
  if (data.height_beta) report.rows.push_back(geq_row("h2 >= h(beta)", exact(h2), *data.height_beta, policy));
  const Rational dh1 = D * h1;
  report.rows.push_back(
      geq_row("h2 >= log(Dh1)", exact(h2), [&](Precision prec) { return log(ball(dh1, prec)); }, policy));
  report.rows.push_back(
      geq_row("h2 >= log D", exact(h2), [&](Precision prec) { return log(ball(D, prec)); }, policy));
  report.rows.push_back(exact_geq_row("h2 >= 1", h2, 1));
  return report;
}

BoundResult bound_nw(const BoundContext& ctx, const OperandData& data) {
  Report report = validate_nw(ctx, data);
  if (const CheckRow* failed = report.first_failure()) throw HypothesisViolation(*failed);
  const Rational h1 = ctx.require_h1();
  const Rational h2 = ctx.require_h2();
  const long D = ctx.D;
  BoundResult out = settle("exp(-2e6 D^3 h1 h2 (log D + 1))", Status::kProven, ctx.precision, [&](Precision prec) {
    const RealBall scale = ball(2000000L, prec) * pow(ball(D, prec), 3L) * ball(h1 * h2, prec);
    return -(scale * (log(ball(D, prec)) + ball(1L, prec)));
  });
  out.hypotheses = std::move(report);
  return out;
}

BoundResult bound_feldman(long m, long D, const LazyReal& h, const LazyReal& c, const PrecisionPolicy& policy) {
  if (m < 1 || D < 1) throw DomainError("m and D must be at least 1");
  return settle("exp(-c D^(2+1/m) (h + log D + 1) / (log D + 1))", Status::kParametric, policy,
                [&](Precision prec) {
                  const RealBall logD = log(ball(D, prec));
                  const RealBall power = pow(ball(D, prec), Rational(2 * m + 1, m));
                  const RealBall one = ball(1L, prec);
                  return -(c(prec) * power * (h(prec) + logD + one) / (logD + one));
                });
}

BoundResult bound_rw(long m, long D, const LazyReal& h1, const LazyReal& h2, const LazyReal& c,
                     const PrecisionPolicy& policy) {
  if (m < 1 || D < 1) throw DomainError("m and D must be at least 1");
  const auto bracket = [&](Precision prec) {
    return log(h1(prec)) + log(h2(prec)) + ball(2L, prec) * log(ball(D, prec)) + ball(1L, prec);
  };
  const bool positive = refine(policy, "sign of log h1 + log h2 + 2 log D + 1",
                               [&](Precision prec) -> std::optional<bool> {
                                 const RealBall value = bracket(prec);
                                 if (value.is_positive()) return true;
                                 if (!value.is_positive() && !value.contains_zero()) return false;
                                 if (value.is_exact()) return false;
                                 return std::nullopt;
                               });
  if (!positive) throw DomainError("log h1 + log h2 + 2 log D + 1 must be positive");
  return settle("exp(-c D^(2+1/m) h1 h2 (log h1 + log h2 + 2 log D + 1)^(1/m))", Status::kParametric, policy,
                [&](Precision prec) {
                  const RealBall power = pow(ball(D, prec), Rational(2 * m + 1, m));
                  return -(c(prec) * power * h1(prec) * h2(prec) * pow(bracket(prec), Rational(1, m)));
                });
}

BoundResult bound_conjecture(int which, const BoundContext& ctx, const OperandData& data) {
  ctx.check_shape();
  if (which < 0 || which > 2) throw DomainError("conjectures are numbered 0, 1 and 2");
  const Rational& c = ctx.constant("c" + std::to_string(which));
  const Rational h = ctx.require_h();
  const long m = ctx.m;
  const long D = ctx.D;
  Report report;
  if (which == 0) {
    const PrecisionPolicy& policy = ctx.precision;
    if (data.height_alpha) report.rows.push_back(geq_row("h >= h(alpha)", exact(h), *data.height_alpha, policy));
    if (data.height_beta) report.rows.push_back(geq_row("h >= h(beta)", exact(h), *data.height_beta, policy));
    if (data.abs_log) {
      const LazyReal scaled = [&](Precision prec) { return (*data.abs_log)(prec) / ball(D, prec); };
      report.rows.push_back(geq_row("h >= |lambda|/D", exact(h), scaled, policy));
    }
    report.rows.push_back(exact_geq_row("h >= 1/D", h, Rational(1, D)));
    if (const CheckRow* failed = report.first_failure()) throw HypothesisViolation(*failed);
  }
  const char* formulas[] = {"exp(-c0 D^2 h)", "exp(-c1 m D^2 h)", "exp(-c2 m D^(1+1/m) h)"};
  BoundResult out = settle(formulas[which], Status::kConjectural, ctx.precision, [&](Precision prec) {
    RealBall scale = ball(c * h, prec);
    if (which == 0) return -(scale * pow(ball(D, prec), 2L));
    scale = scale * ball(m, prec);
    if (which == 1) return -(scale * pow(ball(D, prec), 2L));
    return -(scale * pow(ball(D, prec), Rational(m + 1, m)));
  });
  out.hypotheses = std::move(report);
  return out;
}

BoundResult liouville_linear_form(long m, long D, long S, const LazyReal& h1, const PrecisionPolicy& policy) {
  if (m < 1 || D < 1 || S < 1) throw DomainError("m, D and S must be positive");
  return settle("2^(-D) exp(-m D S h1)", Status::kProven, policy, [&](Precision prec) {
    return -(ball(D, prec) * RealBall::log2(prec) + ball(m * D * S, prec) * h1(prec));
  });
}

// --- lazy reals ---------------------------------------------------------------

LazyReal exact(const Rational& value) {
  return [value](Precision prec) { return RealBall::from_rational(value, prec); };
}

LazyReal parse_real(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw ParseError("empty real value");
  std::vector<LazyReal> factors;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, '*')) {
    if (item == "e") {
      factors.push_back([](Precision prec) { return RealBall::e(prec); });
    } else if (item == "pi") {
      factors.push_back([](Precision prec) { return RealBall::pi(prec); });
    } else if (item.rfind("e^", 0) == 0) {
      const Rational power = parse_rational(item.substr(2));
      factors.push_back([power](Precision prec) { return exp(RealBall::from_rational(power, prec)); });
    } else {
      factors.push_back(exact(parse_rational(item)));
    }
  }
  return [factors](Precision prec) {
    RealBall out = RealBall::from_long(1, prec);
    for (const auto& f : factors) out = out * f(prec);
    return out;
  };
}

}  // namespace mahlerkit::bounds
