#pragma once

#include <functional>
#include <optional>
#include <string>
#include <type_traits>

#include "mahlerkit/ball.hpp"
#include "mahlerkit/errors.hpp"

namespace mahlerkit {

// Start precision and hard cap for precision-doubling loops.
struct PrecisionPolicy {
  Precision start = 64;
  Precision cap = Precision{1} << 20;
};

// A real number that can be evaluated to any requested precision.
using LazyReal = std::function<RealBall(Precision)>;

// Runs attempt(prec) at start, 2*start, ... until it yields a value.
// Exceeding the cap raises PrecisionBudgetExceeded; a wrong answer is never
// returned.
template <class F>
auto refine(const PrecisionPolicy& policy, const std::string& what, F&& attempt)
    -> typename std::invoke_result_t<F, Precision>::value_type {
  for (Precision prec = policy.start; prec <= policy.cap; prec *= 2) {
    if (auto result = attempt(prec)) return std::move(*result);
  }
  throw PrecisionBudgetExceeded(what + ": not certified within " + std::to_string(policy.cap) +
                                " bits");
}

enum class Decision { kFalse, kTrue, kUnknown };

inline Decision decide_less(const RealBall& a, const RealBall& b) {
  if (certainly_less(a, b)) return Decision::kTrue;
  if (certainly_less_equal(b, a)) return Decision::kFalse;
  return Decision::kUnknown;
}

inline Decision decide_less_equal(const RealBall& a, const RealBall& b) {
  if (certainly_less_equal(a, b)) return Decision::kTrue;
  if (certainly_less(b, a)) return Decision::kFalse;
  return Decision::kUnknown;
}

}  // namespace mahlerkit
