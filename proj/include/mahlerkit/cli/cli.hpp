#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mahlerkit/adaptive.hpp"

namespace mahlerkit::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;       // usage, parse and missing-input errors
inline constexpr int kExitHypothesis = 2;  // hypothesis and domain violations
inline constexpr int kExitPrecision = 3;   // precision, isolation and quadrature budgets

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::string output;           // empty: standard output
  std::string format;           // "csv" or "json"; empty picks the command default
  PrecisionPolicy precision;
  unsigned jobs = 1;
  std::uint64_t budget = 100000000;
};

// Parses the arguments (without the program name), runs one subcommand and
// returns its exit status. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mahlerkit::cli
