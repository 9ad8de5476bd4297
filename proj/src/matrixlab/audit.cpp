#include "mahlerkit/matrixlab/audit.hpp"

#include "mahlerkit/bounds/bounds.hpp"
#include "mahlerkit/errors.hpp"
#include "mahlerkit/matrixlab/power_product.hpp"

namespace mahlerkit::matrixlab {

namespace {

using mahlerkit::to_string;

// Exact row for `lhs relation rhs` with a power product on one side.
CheckRow power_row(const std::string& name, const std::string& lhs_text, const std::string& rhs_text,
                   const std::string& relation, bool pass) {
  return CheckRow{name, lhs_text, rhs_text, relation, pass, "exact"};
}

// lhs <= rhs (or < when strict) for two lazily evaluated reals, refined
// until the balls separate.
CheckRow ball_row(const std::string& name, const LazyReal& lhs, const LazyReal& rhs, bool strict,
                  const PrecisionPolicy& policy) {
  return refine(policy, name, [&](Precision prec) -> std::optional<CheckRow> {
    const RealBall a = lhs(prec);
    const RealBall b = rhs(prec);
    const Decision d = strict ? decide_less(a, b) : decide_less_equal(a, b);
    if (d == Decision::kUnknown) return std::nullopt;
    return CheckRow{name, a.to_string(12), b.to_string(12), strict ? "<" : "<=", d == Decision::kTrue,
                    "certified at " + std::to_string(prec) + " bits"};
  });
}

CheckRow exact_row(const std::string& name, const Rational& lhs, const std::string& relation,
                   const Rational& rhs) {
  bool pass = false;
  if (relation == "<") pass = lhs < rhs;
  else if (relation == "<=") pass = lhs <= rhs;
  else if (relation == ">") pass = lhs > rhs;
  else if (relation == ">=") pass = lhs >= rhs;
  else if (relation == "==") pass = lhs == rhs;
  return CheckRow{name, to_string(lhs), to_string(rhs), relation, pass, "exact"};
}

void require(const CheckRow& row) {
  if (!row.pass) throw HypothesisViolation(row);
}

RealBall ball(const Rational& q, Precision prec) { return RealBall::from_rational(q, prec); }

// Natural-log helper for lazily evaluated balls.
LazyReal lazy_log(const Rational& q) {
  return [q](Precision prec) { return log(ball(q, prec)); };
}

RealBall ball_at_default(const PowerProduct& p) { return p.value(kDefaultPrecision); }

}  // namespace

Report gamma_admissibility(long m, long n, long r) {
  const Rational kappa = bounds::kappa(m, n, r);
  const Rational theta = bounds::theta(m, n, r);
  const Rational mm(m), nn(n), rr(r);
  const Rational gamma_u = 1;
  const Rational gamma_t = rr / mm + Rational(1) / (2 * mm * mm * nn);
  const Rational gamma_s = rr / nn + Rational(1) / (mm * nn * nn);
  Report out;
  out.rows.push_back(exact_row("gamma_u > gamma_t + gamma_s", gamma_u, ">", gamma_t + gamma_s));
  out.rows.push_back(exact_row("r gamma_u < m gamma_t", rr * gamma_u, "<", mm * gamma_t));
  out.rows.push_back(exact_row("m gamma_t < n gamma_s", mm * gamma_t, "<", nn * gamma_s));
  out.rows.push_back(exact_row("r kappa (1/m + 1/n) + 1 == kappa", rr * kappa * (1 / mm + 1 / nn) + 1, "==", kappa));
  out.rows.push_back(exact_row("kappa (1 - theta) == 1", kappa * (1 - theta), "==", Rational(1)));
  return out;
}

AuditResult audit_theorem1_params(long m, long n, long r, long D, const Rational& h1, const Rational& h2,
                                  const Rational& c0, const PrecisionPolicy& policy) {
  if (m < 1 || n < 1 || r < 1 || D < 1) throw DomainError("m, n, r and D must be at least 1");
  if (r > std::min(m, n)) throw DomainError("r must not exceed min(m, n)");
  if (h1 <= 0 || h2 <= 0) throw DomainError("h1 and h2 must be positive");

  const Rational theta = bounds::theta(m, n, r);
  const Rational dh1 = Rational(D) * h1;
  const Rational dh2 = Rational(D) * h2;
  AuditResult out;
  auto& rows = out.report.rows;

  // Preconditions.
  {
    const PowerProduct seam = PowerProduct().times(dh2, 1 - theta);
    rows.push_back(power_row("Dh1 >= (Dh2)^(1-theta)", to_string(dh1), seam.to_string(), ">=",
                             seam.compare(dh1) <= 0));
    require(rows.back());
    rows.push_back(exact_row("h2 >= 1", h2, ">=", Rational(1)));
    require(rows.back());
    const LazyReal h2_lazy = bounds::exact(h2);
    rows.push_back(ball_row("log D <= h2", lazy_log(Rational(D)), h2_lazy, false, policy));
    require(rows.back());
    rows.push_back(ball_row("log(Dh1) <= h2", lazy_log(dh1), h2_lazy, false, policy));
    require(rows.back());
    rows.push_back(exact_row("c0 >= 2", c0, ">=", Rational(2)));
    require(rows.back());
  }

  // Parameters. Phi1 is on its first branch by the precondition.
  const Integer S = integer_root(floor(pow(c0 * c0 * c0 * dh2, r)), static_cast<unsigned long>(n));
  const Integer T = integer_root(floor(pow(c0 * c0 * dh2, r)), static_cast<unsigned long>(m));
  const Integer M = pow(Integer(2 * S + 1), static_cast<unsigned long>(n));
  const PowerProduct phi1 = PowerProduct().times(dh1).times(dh2, theta);
  const PowerProduct V = PowerProduct().times(c0, 3 + 4 * theta).times(phi1);
  const PowerProduct U = PowerProduct(V).times(c0, -1);
  const Integer T0 = PowerProduct(U).times(c0 * dh2, -1).floor();
  const Integer& S0 = T0;
  const Rational log_b = c0 * h2;
  const Rational log_a = c0 * Rational(S) * h1;
  const long d = r + m;

  auto& p = out.parameters;
  p.theorem = 1;
  p.c0 = c0;
  p.integers = {{"S", S}, {"M", M}, {"T", T}, {"T0", T0}, {"S0", S0}};
  p.exact = {{"theta", theta}, {"log_B1", log_b}, {"log_B2", log_b}, {"log_A", log_a}};
  p.reals = {{"Phi1", ball_at_default(phi1)}, {"V", ball_at_default(V)}, {"U", ball_at_default(U)}};

  // Rows.
  const Rational t0(T0), s0(S0), t(T), s(S), dd(D), mm(m);
  rows.push_back(power_row("D T0 log B1 <= U", to_string(dd * t0 * log_b), U.to_string(), "<=",
                           U.compare(dd * t0 * log_b) >= 0));
  rows.push_back(power_row("D S0 log B2 <= U", to_string(dd * s0 * log_b), U.to_string(), "<=",
                           U.compare(dd * s0 * log_b) >= 0));
  rows.push_back(power_row("sum D T_i log A_i <= U", to_string(mm * dd * t * log_a), U.to_string(), "<=",
                           U.compare(mm * dd * t * log_a) >= 0));
  rows.push_back(exact_row("T0 >= 1", t0, ">=", Rational(1)));
  rows.push_back(exact_row("T >= 1", t, ">=", Rational(1)));
  rows.push_back(exact_row("S >= 1", s, ">=", Rational(1)));
  rows.push_back(ball_row(
      "c0 D (log D + 1) < U",
      [&](Precision prec) { return ball(c0 * dd, prec) * (log(ball(dd, prec)) + RealBall::from_long(1, prec)); },
      [&](Precision prec) { return U.value(prec); }, true, policy));
  {
    const Integer lhs = binomial(T0 + r, static_cast<unsigned long>(r)) *
                        pow(Integer(T + 1), static_cast<unsigned long>(m));
    const PowerProduct rhs = PowerProduct(Rational(4)).times(V.raised(r));
    rows.push_back(power_row("C(T0+r, r) (T+1)^m > 4 V^r", to_string(lhs), rhs.to_string(), ">",
                             rhs.compare(Rational(lhs)) < 0));
  }
  {
    const Integer lhs = pow(S0, static_cast<unsigned long>(r)) * M;
    const Rational rhs = c0 * Rational(pow(T0, static_cast<unsigned long>(r)) * pow(T, static_cast<unsigned long>(m)));
    rows.push_back(exact_row("S0^r (2S+1)^n > c0 T0^r T^m", Rational(lhs), ">", rhs));
  }
  {
    const Rational total = t0 + mm * t + Rational(d) * s0;
    // B2 = e^(c0 h2) >= total  <=>  log total <= c0 h2.
    rows.push_back(total <= 0 ? exact_row("B2 >= T0 + mT + d S0", Rational(1), ">=", total)
                              : ball_row("log(T0 + mT + d S0) <= log B2", lazy_log(total), bounds::exact(log_b),
                                         false, policy));
  }
  rows.push_back(ball_row(
      "e/D <= log A", [&](Precision prec) { return RealBall::e(prec) / ball(dd, prec); }, bounds::exact(log_a),
      false, policy));
  rows.push_back(exact_row("n S h1 <= log A", Rational(n) * s * h1, "<=", log_a));
  rows.push_back(ball_row(
      "e n S h1 <= log A", [&](Precision prec) { return RealBall::e(prec) * ball(Rational(n) * s * h1, prec); },
      bounds::exact(log_a), false, policy));
  return out;
}

AuditResult audit_theorem2_params(long m, long n, long r, long D, const Rational& h, const Rational& c0,
                                  const PrecisionPolicy& policy) {
  if (m < 1 || n < 1 || r < 1 || D < 1) throw DomainError("m, n, r and D must be at least 1");
  const Rational kappa = bounds::kappa(m, n, r);
  if (h <= 0) throw DomainError("h must be positive");

  AuditResult out;
  auto& rows = out.report.rows;
  const Rational dd(D), mm(m), nn(n), rr(r);
  const Rational dh = dd * h;
  rows.push_back(exact_row("h >= 1/D", h, ">=", 1 / dd));
  require(rows.back());
  rows.push_back(exact_row("c0 >= 1", c0, ">=", Rational(1)));
  require(rows.back());

  const Rational gamma_u = 1;
  const Rational gamma_t = rr / mm + Rational(1) / (2 * mm * mm * nn);
  const Rational gamma_s = rr / nn + Rational(1) / (mm * nn * nn);
  for (const auto& row : gamma_admissibility(m, n, r).rows) rows.push_back(row);

  const PowerProduct U = PowerProduct().times(c0, gamma_u).times(dh, kappa);
  const PowerProduct V = PowerProduct(Rational(12 * m + 9)).times(U);
  const Integer T = PowerProduct().times(c0, gamma_t).times(dh, rr * kappa / mm).floor();
  const Integer S = PowerProduct().times(c0, gamma_s).times(dh, rr * kappa / nn).floor();
  const Rational t(T), s(S);
  // log A = c0^(gamma_u - gamma_t - gamma_s) S h / (e m).
  const PowerProduct log_a_algebraic = PowerProduct().times(c0, gamma_u - gamma_t - gamma_s).times(s * h / mm);
  const LazyReal log_a = [log_a_algebraic, s](Precision prec) {
    if (s == 0) return RealBall(prec);
    return log_a_algebraic.value(prec) / RealBall::e(prec);
  };

  auto& p = out.parameters;
  p.theorem = 2;
  p.c0 = c0;
  p.integers = {{"T", T}, {"S", S}};
  p.exact = {{"kappa", kappa}, {"gamma_u", gamma_u}, {"gamma_t", gamma_t}, {"gamma_s", gamma_s}};
  p.reals = {{"U", U.value(kDefaultPrecision)}, {"V", V.value(kDefaultPrecision)}, {"log_A", log_a(kDefaultPrecision)}};

  rows.push_back(exact_row("T >= 1", t, ">=", Rational(1)));
  rows.push_back(exact_row("S >= 1", s, ">=", Rational(1)));
  rows.push_back(ball_row(
      "D sum T_i log A_i <= U", [&](Precision prec) { return ball(dd * mm * t, prec) * log_a(prec); },
      [&](Precision prec) { return U.value(prec); }, false, policy));
  {
    const Integer lhs = pow(Integer(2 * T + 1), static_cast<unsigned long>(m));
    const PowerProduct rhs = PowerProduct(Rational(2)).times(V.raised(rr));
    rows.push_back(power_row("(2T+1)^m > 2 V^r", to_string(lhs), rhs.to_string(), ">",
                             rhs.compare(Rational(lhs)) < 0));
  }
  const Integer m_factorial = factorial(static_cast<unsigned long>(m));
  rows.push_back(exact_row("m! T^m < (2S+1)^n", Rational(m_factorial * pow(T, static_cast<unsigned long>(m))), "<",
                           Rational(pow(Integer(2 * S + 1), static_cast<unsigned long>(n)))));
  rows.push_back(exact_row("S^(n-1) > m! T", Rational(pow(S, static_cast<unsigned long>(n - 1))), ">",
                           Rational(m_factorial * T)));
  {
    const Rational lhs = 2 * mm * nn * t * s * dh;
    rows.push_back(power_row("2mnTSDh < U", to_string(lhs), U.to_string(), "<", U.compare(lhs) > 0));
  }
  rows.push_back(ball_row(
      "n S h <= log A", [&](Precision prec) { return ball(nn * s * h, prec); }, log_a, false, policy));
  rows.push_back(ball_row(
      "e n S h <= log A", [&](Precision prec) { return RealBall::e(prec) * ball(nn * s * h, prec); }, log_a, false,
      policy));
  return out;
}

std::vector<Rational> doubling_sweep(unsigned max_log2) {
  std::vector<Rational> out;
  for (unsigned k = 1; k <= max_log2; ++k) out.emplace_back(Integer(1) << k);
  return out;
}

namespace {

template <class Audit>
C0Sweep sweep(const std::vector<Rational>& c0_values, Audit&& audit) {
  C0Sweep out;
  for (const auto& c0 : c0_values) {
    const AuditResult result = audit(c0);
    SweepEntry entry{c0, result.passed(), ""};
    if (const CheckRow* failure = result.report.first_failure()) entry.first_failure = failure->name;
    if (entry.passed && (!out.least_passing || c0 < *out.least_passing)) out.least_passing = c0;
    out.entries.push_back(std::move(entry));
  }
  return out;
}

}  // namespace

C0Sweep sweep_theorem1(long m, long n, long r, long D, const Rational& h1, const Rational& h2,
                       const std::vector<Rational>& c0_values, const PrecisionPolicy& policy) {
  return sweep(c0_values, [&](const Rational& c0) { return audit_theorem1_params(m, n, r, D, h1, h2, c0, policy); });
}

C0Sweep sweep_theorem2(long m, long n, long r, long D, const Rational& h, const std::vector<Rational>& c0_values,
                       const PrecisionPolicy& policy) {
  return sweep(c0_values, [&](const Rational& c0) { return audit_theorem2_params(m, n, r, D, h, c0, policy); });
}

}  // namespace mahlerkit::matrixlab
