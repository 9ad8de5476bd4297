#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mahlerkit/adaptive.hpp"
#include "mahlerkit/ball.hpp"
#include "mahlerkit/exact.hpp"
#include "mahlerkit/parallel.hpp"

namespace mahlerkit::search {

struct NearestInteger {
  Integer nearest;
  RealBall distance;  // contains ||x||
  // False when the ball straddles a half-integer, so the nearest integer is
  // not determined.
  bool certain = true;
};

// Nearest integer to the midpoint (exact halves go to the even neighbour)
// and |x - n| as a ball. DomainError when the radius is not below 1/4.
NearestInteger nearest_int_distance(const RealBall& x);

// Refines until the nearest integer is certain and the distance is either
// exact or bounded away from zero. PrecisionBudgetExceeded at the cap.
NearestInteger nearest_int_distance(const LazyReal& x, const PrecisionPolicy& policy = {},
                                    Precision* used = nullptr);

struct ScanRecord {
  long key = 0;                    // a for log a, b for e^b
  RealBall value;                  // log a or e^b
  Integer nearest;
  RealBall distance;               // ||value||
  std::optional<RealBall> exponent;
  Precision precision_used = 0;
  bool flag = false;               // exponent > exponent_ref
  bool certified = true;
  std::string error;               // set when not certified
};

struct ScanOptions {
  Rational exponent_ref = 40;
  PrecisionPolicy policy;
  unsigned jobs = 1;
  // Records handed to the sink per call.
  std::size_t checkpoint = 10000;
};

// Receives consecutive batches of records in increasing key order.
using RecordSink = std::function<void(const std::vector<ScanRecord>&)>;

// ||log a|| and c(a) = -log||log a|| / (log a log log a) for a in
// [a_min, a_max]; DomainError unless 3 <= a_min <= a_max.
void scan_log(long a_min, long a_max, const ScanOptions& options, const RecordSink& sink);
std::vector<ScanRecord> scan_log(long a_min, long a_max, const ScanOptions& options = {});

// ||e^b|| and c'(b) = -log||e^b|| / (b log b) for b in [b_min, b_max];
// DomainError unless 2 <= b_min <= b_max. Precision starts at
// b log2(e) + 64 bits or higher.
void scan_exp(long b_min, long b_max, const ScanOptions& options, const RecordSink& sink);
std::vector<ScanRecord> scan_exp(long b_min, long b_max, const ScanOptions& options = {});

struct SequenceRecord {
  long b = 0;
  Integer a;           // nearest integer to e^b
  RealBall difference; // |log a - b|
  RealBall inverse;    // 1/a
  bool pass = false;   // difference < inverse, certified
};

// One row per b in [1, b_max].
std::vector<SequenceRecord> mahler_sequence(long b_max, const PrecisionPolicy& policy = {});

struct ProbeRecord {
  long b = 0;
  Integer a;
  RealBall distance;   // |e^b - a|
  RealBall threshold;  // a^(-c)
  RealBall ratio;      // distance / threshold
  bool holds = false;  // distance >= threshold, certified
};

// One row per b in [2, b_max]; DomainError when b_max < 2 or c < 0.
std::vector<ProbeRecord> mahler_problem_probe(long b_max, const Rational& c, const PrecisionPolicy& policy = {});

struct ConvergentList {
  std::vector<Integer> partial_quotients;
  std::vector<Integer> numerators;    // p_k
  std::vector<Integer> denominators;  // q_k
  Precision precision_used = 0;

  Rational convergent(std::size_t k) const { return Rational(numerators[k], denominators[k]); }
};

// First `count` partial quotients shared by every point of the ball.
// RationalDetected for an exact ball; PrecisionBudgetExceeded when the ball
// is too wide to fix `count` quotients.
ConvergentList convergents(const RealBall& x, std::size_t count);
// Same, doubling the precision until `count` quotients are certified.
ConvergentList convergents(const LazyReal& x, std::size_t count, const PrecisionPolicy& policy = {});

// ln2, e, pi, golden, sqrt2. Returns nullopt for other names.
std::optional<LazyReal> named_constant(const std::string& name);

}  // namespace mahlerkit::search
