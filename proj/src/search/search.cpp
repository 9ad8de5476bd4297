#include "mahlerkit/search/search.hpp"

#include <algorithm>
#include <cmath>

#include "mahlerkit/errors.hpp"

namespace mahlerkit::search {

namespace {

RealBall ball(long v, Precision prec) { return RealBall::from_long(v, prec); }

// Inner result of one precision attempt; nullopt asks for more bits.
std::optional<NearestInteger> try_nearest(const RealBall& x) {
  Mpfr quarter(kRadiusPrecision);
  mpfr_set_ui_2exp(quarter.get(), 1, -2, MPFR_RNDN);
  if (!mpfr_less_p(x.rad().get(), quarter.get())) return std::nullopt;
  NearestInteger out = nearest_int_distance(x);
  if (!out.certain) return std::nullopt;
  if (!out.distance.is_exact() && !out.distance.is_positive()) return std::nullopt;
  return out;
}

template <class Compute>
void run_scan(long from, long to, const ScanOptions& options, const RecordSink& sink, Compute&& compute) {
  const Executor executor(options.jobs);
  const long chunk = static_cast<long>(std::max<std::size_t>(1, options.checkpoint));
  for (long start = from; start <= to; start += chunk) {
    const long stop = std::min(to, start + chunk - 1);
    std::vector<ScanRecord> records(static_cast<std::size_t>(stop - start + 1));
    executor.for_each(records.size(), [&](std::size_t i) {
      const long key = start + static_cast<long>(i);
      try {
        records[i] = compute(key);
      } catch (const PrecisionBudgetExceeded& e) {
        ScanRecord failed;
        failed.key = key;
        failed.certified = false;
        failed.error = e.what();
        records[i] = std::move(failed);
      }
    });
    sink(records);
  }
}

// Shared tail of both scans: distance, exponent = -log d / scale, flag.
ScanRecord scan_record(long key, const LazyReal& value, const LazyReal& scale, const Rational& reference,
                       const PrecisionPolicy& policy) {
  return refine(policy, "record " + std::to_string(key), [&](Precision prec) -> std::optional<ScanRecord> {
    const RealBall x = value(prec);
    auto nearest = try_nearest(x);
    if (!nearest || !nearest->distance.is_positive()) return std::nullopt;
    const RealBall exponent = -log(nearest->distance) / scale(prec);
    const Decision above = decide_less(RealBall::from_rational(reference, prec), exponent);
    if (above == Decision::kUnknown) return std::nullopt;
    ScanRecord out;
    out.key = key;
    out.value = x;
    out.nearest = nearest->nearest;
    out.distance = nearest->distance;
    out.exponent = exponent;
    out.precision_used = prec;
    out.flag = above == Decision::kTrue;
    return out;
  });
}

template <class Record>
std::vector<ScanRecord> collect(long from, long to, const ScanOptions& options, Record&& scan) {
  std::vector<ScanRecord> out;
  scan(from, to, options, [&](const std::vector<ScanRecord>& batch) {
    out.insert(out.end(), batch.begin(), batch.end());
  });
  return out;
}

// Exact bounds of a ball as rationals.
std::pair<Rational, Rational> endpoints(const RealBall& x) {
  return {x.lower().to_rational(), x.upper().to_rational()};
}

enum class Expansion { kDone, kAmbiguous, kTerminated };

// Partial quotients shared by every point of [lo, hi].
Expansion expand(Rational lo, Rational hi, std::size_t count, std::vector<Integer>& quotients) {
  while (quotients.size() < count) {
    const Integer a = floor(lo);
    if (floor(hi) != a) return Expansion::kAmbiguous;
    quotients.push_back(a);
    lo -= a;
    hi -= a;
    if (lo == 0) return hi == 0 ? Expansion::kTerminated : Expansion::kAmbiguous;
    const Rational next_lo = 1 / hi;
    hi = 1 / lo;
    lo = next_lo;
  }
  return Expansion::kDone;
}

ConvergentList assemble(std::vector<Integer> quotients) {
  ConvergentList out;
  Integer p_prev = 1, q_prev = 0, p = 0, q = 1;
  for (const auto& a : quotients) {
    const Integer p_next = a * p_prev + p;
    const Integer q_next = a * q_prev + q;
    p = p_prev;
    q = q_prev;
    p_prev = p_next;
    q_prev = q_next;
    out.numerators.push_back(p_next);
    out.denominators.push_back(q_next);
  }
  out.partial_quotients = std::move(quotients);
  return out;
}

std::optional<ConvergentList> try_convergents(const RealBall& x, std::size_t count) {
  if (x.is_exact()) {
    throw RationalDetected("value " + x.mid().to_rational().get_str() + " is an exact rational");
  }
  auto [lo, hi] = endpoints(x);
  std::vector<Integer> quotients;
  switch (expand(lo, hi, count, quotients)) {
    case Expansion::kDone: {
      ConvergentList out = assemble(std::move(quotients));
      out.precision_used = x.precision();
      return out;
    }
    case Expansion::kTerminated:
      throw RationalDetected("continued fraction terminates");
    case Expansion::kAmbiguous:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

NearestInteger nearest_int_distance(const RealBall& x) {
  Mpfr quarter(kRadiusPrecision);
  mpfr_set_ui_2exp(quarter.get(), 1, -2, MPFR_RNDN);
  if (!mpfr_less_p(x.rad().get(), quarter.get())) {
    throw DomainError("nearest integer needs a ball radius below 1/4");
  }
  const Precision prec = x.precision();
  NearestInteger out;
  out.nearest = round_half_even(x.mid().to_rational());
  out.distance = abs(x - RealBall::from_integer(out.nearest, prec));
  // The nearest integer is fixed unless a half-integer lies strictly inside
  // the ball; an exact half is a deterministic tie.
  const RealBall half = RealBall::from_rational(Rational(1, 2), prec);
  out.certain = x.is_exact() || certainly_less(out.distance, half);
  return out;
}

NearestInteger nearest_int_distance(const LazyReal& x, const PrecisionPolicy& policy, Precision* used) {
  return refine(policy, "nearest integer", [&](Precision prec) -> std::optional<NearestInteger> {
    auto out = try_nearest(x(prec));
    if (out && used) *used = prec;
    return out;
  });
}

void scan_log(long a_min, long a_max, const ScanOptions& options, const RecordSink& sink) {
  if (a_min < 3 || a_min > a_max) throw DomainError("scan-log needs 3 <= a_min <= a_max");
  run_scan(a_min, a_max, options, sink, [&](long a) {
    const LazyReal value = [a](Precision prec) { return log(ball(a, prec)); };
    const LazyReal scale = [a](Precision prec) {
      const RealBall la = log(ball(a, prec));
      return la * log(la);
    };
    return scan_record(a, value, scale, options.exponent_ref, options.policy);
  });
}

std::vector<ScanRecord> scan_log(long a_min, long a_max, const ScanOptions& options) {
  return collect(a_min, a_max, options, [](long f, long t, const ScanOptions& o, const RecordSink& s) {
    scan_log(f, t, o, s);
  });
}

void scan_exp(long b_min, long b_max, const ScanOptions& options, const RecordSink& sink) {
  if (b_min < 2 || b_min > b_max) throw DomainError("scan-exp needs 2 <= b_min <= b_max");
  run_scan(b_min, b_max, options, sink, [&](long b) {
    PrecisionPolicy policy = options.policy;
    // e^b has about b log2(e) integer bits; the fraction needs more.
    const auto integer_bits = static_cast<Precision>(std::ceil(static_cast<double>(b) * M_LOG2E));
    policy.start = std::max(policy.start, integer_bits + 64);
    const LazyReal value = [b](Precision prec) { return exp(ball(b, prec)); };
    const LazyReal scale = [b](Precision prec) { return ball(b, prec) * log(ball(b, prec)); };
    if (policy.start > policy.cap) {
      throw PrecisionBudgetExceeded("record " + std::to_string(b) + ": needs at least " +
                                    std::to_string(policy.start) + " bits");
    }
    return scan_record(b, value, scale, options.exponent_ref, policy);
  });
}

std::vector<ScanRecord> scan_exp(long b_min, long b_max, const ScanOptions& options) {
  return collect(b_min, b_max, options, [](long f, long t, const ScanOptions& o, const RecordSink& s) {
    scan_exp(f, t, o, s);
  });
}

std::vector<SequenceRecord> mahler_sequence(long b_max, const PrecisionPolicy& policy) {
  if (b_max < 1) throw DomainError("mahler-seq needs b_max >= 1");
  std::vector<SequenceRecord> out;
  for (long b = 1; b <= b_max; ++b) {
    const NearestInteger nearest = nearest_int_distance([b](Precision prec) { return exp(ball(b, prec)); }, policy);
    SequenceRecord row = refine(policy, "b = " + std::to_string(b), [&](Precision prec) -> std::optional<SequenceRecord> {
      const RealBall a = RealBall::from_integer(nearest.nearest, prec);
      const RealBall difference = abs(log(a) - ball(b, prec));
      const RealBall inverse = mahlerkit::inverse(a);
      const Decision d = decide_less(difference, inverse);
      if (d == Decision::kUnknown) return std::nullopt;
      return SequenceRecord{b, nearest.nearest, difference, inverse, d == Decision::kTrue};
    });
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<ProbeRecord> mahler_problem_probe(long b_max, const Rational& c, const PrecisionPolicy& policy) {
  if (b_max < 2) throw DomainError("probe needs b_max >= 2");
  if (c < 0) throw DomainError("probe needs c >= 0");
  std::vector<ProbeRecord> out;
  for (long b = 2; b <= b_max; ++b) {
    PrecisionPolicy local = policy;
    local.start = std::max(policy.start, static_cast<Precision>(std::ceil(static_cast<double>(b) * M_LOG2E)) + 64);
    ProbeRecord row = refine(local, "b = " + std::to_string(b), [&](Precision prec) -> std::optional<ProbeRecord> {
      const RealBall value = exp(ball(b, prec));
      auto nearest = try_nearest(value);
      if (!nearest) return std::nullopt;
      const RealBall threshold = pow(RealBall::from_integer(nearest->nearest, prec), Rational(-c));
      const Decision d = decide_less_equal(threshold, nearest->distance);
      if (d == Decision::kUnknown) return std::nullopt;
      return ProbeRecord{b, nearest->nearest, nearest->distance, threshold, nearest->distance / threshold,
                         d == Decision::kTrue};
    });
    out.push_back(std::move(row));
  }
  return out;
}

ConvergentList convergents(const RealBall& x, std::size_t count) {
  if (auto out = try_convergents(x, count)) return std::move(*out);
  throw PrecisionBudgetExceeded("ball too wide for " + std::to_string(count) + " partial quotients");
}

ConvergentList convergents(const LazyReal& x, std::size_t count, const PrecisionPolicy& policy) {
  return refine(policy, "continued fraction", [&](Precision prec) { return try_convergents(x(prec), count); });
}

std::optional<LazyReal> named_constant(const std::string& name) {
  if (name == "ln2") return LazyReal([](Precision prec) { return RealBall::log2(prec); });
  if (name == "e") return LazyReal([](Precision prec) { return RealBall::e(prec); });
  if (name == "pi") return LazyReal([](Precision prec) { return RealBall::pi(prec); });
  if (name == "sqrt2") return LazyReal([](Precision prec) { return sqrt(ball(2, prec)); });
  if (name == "golden") {
    return LazyReal([](Precision prec) { return (ball(1, prec) + sqrt(ball(5, prec))) / ball(2, prec); });
  }
  return std::nullopt;
}

}  // namespace mahlerkit::search
