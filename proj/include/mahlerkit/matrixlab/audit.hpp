#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mahlerkit/adaptive.hpp"
#include "mahlerkit/exact.hpp"
#include "mahlerkit/report.hpp"

namespace mahlerkit::matrixlab {

// Auxiliary parameters of a transcendence proof together with the
// inequality report they are checked against.
struct ProofParameters {
  int theorem = 1;
  Rational c0;
  std::map<std::string, Integer> integers;   // S, M, T, T0, S0
  std::map<std::string, Rational> exact;     // exponents and rational logs
  std::map<std::string, RealBall> reals;     // U, V, log A, ...
};

struct AuditResult {
  ProofParameters parameters;
  // Preconditions first, then one row per inequality.
  Report report;
  bool passed() const { return report.passed(); }
};

// Parameters of the three-exponent proof: S, T, T0 = S0,
// U, V, B1 = B2 = e^(c0 h2), A = e^(c0 S h1). Preconditions Dh1 >=
// (Dh2)^(1-theta), h2 >= max(1, log D, log Dh1) and c0 >= 2 raise
// HypothesisViolation.
AuditResult audit_theorem1_params(long m, long n, long r, long D, const Rational& h1, const Rational& h2,
                                  const Rational& c0, const PrecisionPolicy& policy = {});

// Parameters of the kappa proof with gamma_u = 1, gamma_t = r/m +
// 1/(2m^2 n), gamma_s = r/n + 1/(m n^2). DegenerateExponent when mn <= r(m+n).
AuditResult audit_theorem2_params(long m, long n, long r, long D, const Rational& h, const Rational& c0,
                                  const PrecisionPolicy& policy = {});

// Exact rows gamma_u > gamma_t + gamma_s, r gamma_u < m gamma_t < n gamma_s
// and the kappa identities. DegenerateExponent when mn <= r(m+n).
Report gamma_admissibility(long m, long n, long r);

struct SweepEntry {
  Rational c0;
  bool passed = false;
  std::string first_failure;  // empty when passed
};

struct C0Sweep {
  std::vector<SweepEntry> entries;
  std::optional<Rational> least_passing;
};

// c0 = 2, 4, ..., 2^max_log2.
std::vector<Rational> doubling_sweep(unsigned max_log2 = 10);

C0Sweep sweep_theorem1(long m, long n, long r, long D, const Rational& h1, const Rational& h2,
                       const std::vector<Rational>& c0_values, const PrecisionPolicy& policy = {});
C0Sweep sweep_theorem2(long m, long n, long r, long D, const Rational& h, const std::vector<Rational>& c0_values,
                       const PrecisionPolicy& policy = {});

}  // namespace mahlerkit::matrixlab
