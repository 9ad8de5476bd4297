// Acceptance criteria runner. Prints one PASS/FAIL line per criterion with
// the measured quantity, its pinned tolerance and the runtime limit.
//
//   mahlerkit_acceptance            run everything
//   mahlerkit_acceptance --only 05  run one criterion
//
// Exit status 0 when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "mahlerkit/algnum/height.hpp"
#include "mahlerkit/algnum/mahler.hpp"
#include "mahlerkit/algnum/polynomial.hpp"
#include "mahlerkit/bounds/bounds.hpp"
#include "mahlerkit/errors.hpp"
#include "mahlerkit/matrixlab/audit.hpp"
#include "mahlerkit/matrixlab/lemmas.hpp"
#include "mahlerkit/matrixlab/logmatrix.hpp"
#include "mahlerkit/search/search.hpp"
#include "oracles.hpp"

using namespace mahlerkit;
using mahlerkit::testing::Gen;

namespace {

// Pinned tolerances and limits.
constexpr double kJensenRelTol = 1e-6;
constexpr double kJensenSeconds = 30;
constexpr double kHeightSeconds = 5;
constexpr double kExponentSeconds = 1;
constexpr double kSeamUlps = 1;
constexpr double kLemma2Seconds = 60;
constexpr double kLemma3Seconds = 60;
constexpr double kRemarkSeconds = 5;
constexpr double kScanSeconds = 300;
constexpr double kScanExponentCap = 40;

struct Verdict {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double seconds_limit;  // <= 0: no limit
  std::function<Verdict()> run;
};

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

void require(Verdict& v, bool ok, const std::string& what) {
  if (!ok && v.pass) {
    v.pass = false;
    v.detail = "first violation: " + what;
  }
}

// ---------------------------------------------------------------------------

Verdict check_jensen() {
  Gen gen(101);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const algnum::IntPolynomial f(gen.polynomial(static_cast<int>(gen.integer(1, 6)), 20));
    const double by_roots = algnum::mahler_measure_roots(f, 128).to_double();
    const double by_integral = algnum::mahler_measure_integral(f).value;
    worst = std::max(worst, std::abs(by_roots - by_integral) / by_roots);
  }
  return {worst < kJensenRelTol, "50 polynomials, max relative difference " + fmt("%.2e", worst) + " (tol 1e-6)"};
}

Verdict check_heights() {
  Gen gen(102);
  Verdict v;
  for (int i = 0; i < 1000; ++i) {
    const long p = gen.integer(-100000, 100000);
    const long q = gen.nonzero(-100000, 100000);
    const long g = std::gcd(p, q);
    const long top = std::max(std::labs(p / g), std::labs(q / g));
    Rational xr(p, q);
    xr.canonicalize();
    require(v, algnum::naive_height(xr) == top, "naive height of " + std::to_string(p) + "/" + std::to_string(q));
    const long double oracle = mahlerkit::testing::mpfr_eval(top, [](mpfr_ptr t) { mpfr_log(t, t, MPFR_RNDN); });
    const RealBall h = algnum::height_rational(Integer(p), Integer(q));
    require(v, h.inflated(2).contains(rational_from_long_double(oracle)) || (top == 1 && h.contains(Rational(0))),
            "h(" + std::to_string(p) + "/" + std::to_string(q) + ")");

    const Rational y = gen.nonzero_rational(1000);
    const long n = gen.integer(-6, 6);
    const RealBall hx = algnum::height_rational(xr);
    const RealBall hy = algnum::height_rational(y);
    require(v, !certainly_less((hx + hy).inflated(2), algnum::height_rational(xr * y)), "h(xy) <= h(x) + h(y)");
    if (xr != 0) {
      require(v, algnum::height_rational(pow(xr, n)).inflated(2).overlaps(hx * RealBall::from_long(std::labs(n))),
              "h(x^n) = |n| h(x)");
    }
  }
  if (v.pass) v.detail = "1000 rationals: exact reduction, h(xy) <= h(x)+h(y), h(x^n) = |n|h(x)";
  return v;
}

double ulps(const RealBall& a, const RealBall& b) {
  Mpfr diff(a.precision() + 64);
  mpfr_sub(diff.get(), a.mid().get(), b.mid().get(), MPFR_RNDN);
  if (diff.is_zero()) return 0.0;
  const long exponent = mpfr_get_exp(a.mid().get()) - static_cast<long>(a.precision());
  mpfr_mul_2si(diff.get(), diff.get(), -exponent, MPFR_RNDN);
  return std::fabs(diff.to_double());
}

Verdict check_exponents() {
  Verdict v;
  int shapes = 0;
  for (long m = 1; m <= 10; ++m) {
    for (long n = 1; n <= 10; ++n) {
      for (long r = 1; r <= std::min(m, n); ++r) {
        if (m * n <= r * (m + n)) continue;
        const Rational k = bounds::kappa(m, n, r);
        require(v, k * (1 - bounds::theta(m, n, r)) == 1, "kappa (1 - theta) = 1");
        require(v, r * k * (Rational(1, m) + Rational(1, n)) + 1 == k, "r kappa (1/m + 1/n) + 1 = kappa");
        ++shapes;
      }
    }
  }
  Gen gen(103);
  double worst = 0;
  for (int contexts = 0; contexts < 100;) {
    const long m = gen.integer(1, 6), n = gen.integer(1, 6), r = gen.integer(1, std::min(m, n));
    const Rational gap = 1 - bounds::theta(m, n, r);
    if (gap <= 0) continue;
    bounds::BoundContext ctx;
    ctx.m = m;
    ctx.n = n;
    ctx.r = r;
    ctx.D = gen.integer(1, 5);
    const Integer k = gen.integer(2, 9);
    ctx.h2 = Rational(pow(k, gap.get_den().get_ui()), ctx.D);
    ctx.h1 = Rational(pow(k, gap.get_num().get_ui()), ctx.D);
    worst = std::max(worst, ulps(bounds::phi1_branch(ctx, 1).log_value, bounds::phi1_branch(ctx, 2).log_value));
    ++contexts;
  }
  require(v, worst <= kSeamUlps, "seam difference " + fmt("%.0f", worst) + " ulp");
  if (v.pass) v.detail = std::to_string(shapes) + " shapes exact; seam max " + fmt("%.0f", worst) + " ulp (tol 1)";
  return v;
}

Verdict check_two_log_pin() {
  Verdict v;
  bounds::BoundContext ctx;
  ctx.m = 2;
  ctx.h1 = 1;
  ctx.h2 = 1;
  const RealBall log_value = bounds::bound_nw(ctx).log_value;
  require(v, log_value.is_exact() && log_value.contains(Rational(-2000000)), "log value " + log_value.to_string());
  // Tight list, then each entry moved by 1/1000 in the failing direction.
  const bounds::OperandData tight{bounds::exact(1), bounds::exact(1), bounds::exact(1)};
  require(v, bounds::validate_nw(ctx, tight).passed(), "tight list rejected");
  const Rational down("999/1000"), up("1001/1000");
  int rejected = 0;
  auto check = [&](const bounds::BoundContext& c, const bounds::OperandData& d, const std::string& what) {
    const bool ok = !bounds::validate_nw(c, d).passed();
    require(v, ok, "perturbed " + what + " accepted");
    rejected += ok ? 1 : 0;
  };
  bounds::BoundContext c = ctx;
  c.h1 = down;
  check(c, tight, "h1");
  c = ctx;
  c.h2 = down;
  check(c, tight, "h2");
  check(ctx, {bounds::exact(up), bounds::exact(1), bounds::exact(1)}, "h(alpha)");
  check(ctx, {bounds::exact(1), bounds::exact(up), bounds::exact(1)}, "|lambda|");
  check(ctx, {bounds::exact(1), bounds::exact(1), bounds::exact(up)}, "h(beta)");
  if (v.pass) v.detail = "log value exactly -2000000; " + std::to_string(rejected) + "/5 perturbations rejected";
  return v;
}

Verdict check_lemma2() {
  Gen gen(105);
  Verdict v;
  long rank_total = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto b = gen.matrix(gen.integer(1, 5), gen.integer(1, 5), 20);
    const long r = matrixlab::rational_rank(b);
    const auto cert = matrixlab::lemma2_factor(b, r);
    require(v, cert.left * cert.right == cert.permuted && cert.permuted == b.select(cert.row_order, cert.col_order),
            "product identity in trial " + std::to_string(trial));
    require(v, cert.checks.passed(), "certificate row in trial " + std::to_string(trial));
    rank_total += r;
  }
  if (v.pass) v.detail = "200 matrices (total rank " + std::to_string(rank_total) + "): product and height rows pass";
  return v;
}

bool next_tuple(std::vector<long>& tuple, long bound) {
  for (std::size_t k = tuple.size(); k-- > 0;) {
    if (tuple[k] < bound) {
      ++tuple[k];
      return true;
    }
    tuple[k] = -bound;
  }
  return false;
}

Verdict check_lemma3() {
  Verdict v;
  long cases = 0;
  for (std::size_t m = 1; m <= 3; ++m) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto lm = matrixlab::make_lic_matrix(m, n);
      std::vector<long> t(m, -2);
      do {
        if (std::all_of(t.begin(), t.end(), [](long x) { return x == 0; })) continue;
        for (long S = 1; S <= 2; ++S) {
          // Exhaustive oracle: the set of exact rational products.
          std::set<Rational> values;
          std::vector<long> s(n, -S);
          do {
            Rational value = 1;
            for (std::size_t i = 0; i < m; ++i) {
              for (std::size_t j = 0; j < n; ++j) value *= pow(lm.bases()(i, j), t[i] * s[j]);
            }
            values.insert(value);
          } while (next_tuple(s, S));
          const auto got = matrixlab::lemma3_count(lm, t, S);
          const Integer threshold = pow(Integer(2 * S + 1), n - 1);
          require(v, got.count == values.size(), "count differs from enumeration");
          require(v, Integer(static_cast<unsigned long>(values.size())) >= threshold && got.pass, "count below threshold");
          ++cases;
        }
      } while (next_tuple(t, 2));
    }
  }
  if (v.pass) v.detail = std::to_string(cases) + " (m, n, t, S) cases match enumeration and meet (2S+1)^(n-1)";
  return v;
}

// Rank 2 planted as [[I, Y], [X, XY]], rows and columns shuffled, rows rescaled.
matrixlab::RationalMatrix planted_rank(Gen& gen) {
  matrixlab::RationalMatrix left(3, 2), right(2, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < 2; ++k) left(i, k) = i < 2 ? Rational(i == k ? 1 : 0) : gen.rational(20);
  }
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t j = 0; j < 3; ++j) right(k, j) = j < 2 ? Rational(j == k ? 1 : 0) : gen.rational(20);
  }
  std::vector<std::size_t> rows{0, 1, 2}, cols{0, 1, 2};
  std::shuffle(rows.begin(), rows.end(), gen.engine());
  std::shuffle(cols.begin(), cols.end(), gen.engine());
  auto out = (left * right).select(rows, cols);
  for (std::size_t i = 0; i < 3; ++i) {
    const Rational scale = gen.nonzero_rational(9);
    for (std::size_t j = 0; j < 3; ++j) out(i, j) *= scale;
  }
  return out;
}

// L is the best rank-1 approximation by long double SVD, stored as an exact
// outer product.
Verdict check_lemma1() {
  Gen gen(107);
  Verdict v;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 100; ++trial) {
    const auto b = planted_rank(gen);
    std::vector<std::vector<long double>> numeric(3, std::vector<long double>(3));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) numeric[i][j] = static_cast<long double>(b(i, j).get_d());
    }
    const auto f = mahlerkit::testing::truncated_svd(numeric, 1);
    matrixlab::BallMatrix l(3, 3, 256);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        l(i, j) = ComplexBall(RealBall::from_rational(rational_from_double(f.left[i][0]), 256) *
                              RealBall::from_rational(rational_from_double(f.right[0][j]), 256));
      }
    }
    const auto result = matrixlab::lemma1_check(b, l, 1, 1, 256);
    require(v, result.rank_b == 2 && result.report.passed(), "trial " + std::to_string(trial));
    // Independent re-check in long double: n = 3, D = 1.
    long double distance = 0;
    Integer base = 2;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const long double approx = static_cast<long double>(f.left[i][0]) * static_cast<long double>(f.right[0][j]);
        distance = std::max(distance, std::fabs(numeric[i][j] - approx));
        base = std::max(base, algnum::naive_height(b(i, j)));
      }
    }
    const long double log_bound = -3 * std::log(3.0L) - 12 * std::log(static_cast<long double>(base.get_d()));
    require(v, std::log(distance) >= log_bound, "independent distance check in trial " + std::to_string(trial));
    worst_margin = std::min(worst_margin, (log(result.distance) - result.log_bound).to_double());
  }
  if (v.pass) v.detail = "100 trials pass; smallest log(distance / bound) = " + fmt("%.1f", worst_margin);
  return v;
}

Verdict check_remark() {
  Verdict v;
  const auto rows = search::mahler_sequence(40);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(v, rows[i].pass, "b = " + std::to_string(rows[i].b));
    require(v, rows[i].a == mahlerkit::testing::round_exp(rows[i].b), "a differs from oracle");
    if (i > 0) require(v, rows[i].a > rows[i - 1].a, "a not increasing");
  }
  if (v.pass) v.detail = "b = 1..40 certified |log a - b| < 1/a, a increasing";
  return v;
}

Verdict check_scans() {
  Verdict v;
  const auto logs = search::scan_log(10, 10000);
  double max_c = 0;
  long at = 0;
  for (const auto& r : logs) {
    require(v, r.certified && r.distance.is_positive(), "log record " + std::to_string(r.key));
    if (r.exponent && r.exponent->to_double() > max_c) {
      max_c = r.exponent->to_double();
      at = r.key;
    }
  }
  require(v, max_c <= kScanExponentCap, "max c(a) = " + fmt("%.3f", max_c));
  const auto exps = search::scan_exp(2, 60);
  for (const auto& r : exps) require(v, r.certified && r.distance.is_positive(), "exp record " + std::to_string(r.key));
  if (v.pass) {
    v.detail = std::to_string(logs.size()) + " log records and " + std::to_string(exps.size()) +
               " exp records certified; max c(a) = " + fmt("%.4f", max_c) + " at a = " + std::to_string(at) +
               " (cap 40)";
  }
  return v;
}

Verdict check_gamma() {
  Verdict v;
  int shapes = 0;
  for (long m = 1; m <= 6; ++m) {
    for (long n = 1; n <= 6; ++n) {
      for (long r = 1; r <= std::min(m, n); ++r) {
        if (m * n <= r * (m + n)) continue;
        require(v, matrixlab::gamma_admissibility(m, n, r).passed(), "shape " + std::to_string(m) + std::to_string(n) + std::to_string(r));
        ++shapes;
      }
    }
  }
  const auto t2 = matrixlab::audit_theorem2_params(2, 3, 1, 1, 1, 2);
  require(v, t2.parameters.exact.at("gamma_t") == Rational(13, 24), "gamma_t");
  require(v, t2.parameters.exact.at("gamma_s") == Rational(7, 18), "gamma_s");
  if (v.pass) v.detail = std::to_string(shapes) + " shapes admissible; (2,3,1): gamma_t = 13/24, gamma_s = 7/18";
  return v;
}

Verdict check_theorem1_sweep() {
  const auto sweep = matrixlab::sweep_theorem1(2, 3, 1, 1, 10, 10, matrixlab::doubling_sweep(10));
  if (sweep.least_passing) return {true, "least passing c0 = " + to_string(*sweep.least_passing)};
  std::set<std::string> failures;
  for (const auto& e : sweep.entries) failures.insert(e.first_failure);
  std::string rows;
  for (const auto& f : failures) rows += (rows.empty() ? "" : "; ") + f;
  return {false, "no c0 in {2, ..., 2^10} passes; failing row: " + rows};
}

Verdict check_determinism() {
  Verdict v;
  search::ScanOptions base;
  search::ScanOptions doubled;
  doubled.policy.start = 2 * base.policy.start;
  search::ScanOptions parallel;
  parallel.jobs = 4;
  parallel.checkpoint = 997;
  long records = 0;
  auto compare = [&](const std::vector<search::ScanRecord>& a, const std::vector<search::ScanRecord>& b,
                     const std::string& what) {
    require(v, a.size() == b.size(), what + " sizes");
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      require(v, a[i].key == b[i].key && a[i].nearest == b[i].nearest && a[i].flag == b[i].flag &&
                     a[i].certified == b[i].certified,
              what + " record " + std::to_string(a[i].key));
    }
  };
  const auto logs = search::scan_log(3, 10000, base);
  compare(logs, search::scan_log(3, 10000, doubled), "log, doubled precision");
  compare(logs, search::scan_log(3, 10000, parallel), "log, 4 jobs");
  const auto exps = search::scan_exp(2, 300, base);
  compare(exps, search::scan_exp(2, 300, doubled), "exp, doubled precision");
  compare(exps, search::scan_exp(2, 300, parallel), "exp, 4 jobs");
  records = static_cast<long>(logs.size() + exps.size());
  const auto seq = search::mahler_sequence(40, base.policy);
  const auto seq2 = search::mahler_sequence(40, doubled.policy);
  for (std::size_t i = 0; i < seq.size(); ++i) require(v, seq[i].a == seq2[i].a && seq[i].pass == seq2[i].pass, "sequence");
  if (v.pass) v.detail = std::to_string(records) + " scan records identical across precision x2 and 4 jobs";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = argv[++i];
    } else {
      std::cerr << "usage: mahlerkit_acceptance [--only ID]\n";
      return 2;
    }
  }
  const std::vector<Criterion> criteria{
      {"01", "Jensen equivalence", kJensenSeconds, check_jensen},
      {"02", "Height identities", kHeightSeconds, check_heights},
      {"03", "Exponent algebra", kExponentSeconds, check_exponents},
      {"04", "Two-logarithm bound pin", 0, check_two_log_pin},
      {"05", "Rank factorization certificates", kLemma2Seconds, check_lemma2},
      {"06", "Distinct-product counting", kLemma3Seconds, check_lemma3},
      {"07", "Rank-gap distance inequality", 0, check_lemma1},
      {"08", "Nearest-integer sequence prefix", kRemarkSeconds, check_remark},
      {"09", "Desk-scale scans", kScanSeconds, check_scans},
      {"10a", "Gamma admissibility", 0, check_gamma},
      {"10b", "Three-exponent audit c0 sweep", 0, check_theorem1_sweep},
      {"11", "Determinism", 0, check_determinism},
  };
  int failures = 0;
  int ran = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && c.id != only) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt("%.2f s", seconds);
    if (c.seconds_limit > 0) {
      timing += fmt(" (limit %.0f s)", c.seconds_limit);
      if (seconds >= c.seconds_limit) {
        v.pass = false;
        v.detail += "; over the time limit";
      }
    }
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title << ": " << v.detail << " [" << timing
              << "]" << std::endl;
    failures += v.pass ? 0 : 1;
  }
  if (ran == 0) {
    std::cerr << "no criterion with id " << only << "\n";
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
