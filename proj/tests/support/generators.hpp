#pragma once

// Seeded generators for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "mahlerkit/exact.hpp"
#include "mahlerkit/matrixlab/matrix.hpp"

namespace mahlerkit::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  bool coin() { return integer(0, 1) == 1; }

  long nonzero(long lo, long hi) {
    while (true) {
      const long v = integer(lo, hi);
      if (v != 0) return v;
    }
  }

  // p/q with |p| <= bound, 1 <= q <= bound.
  Rational rational(long bound) {
    Rational q(integer(-bound, bound), integer(1, bound));
    q.canonicalize();
    return q;
  }

  Rational nonzero_rational(long bound) {
    Rational q(nonzero(-bound, bound), integer(1, bound));
    q.canonicalize();
    return q;
  }

  // Coefficients constant term first with a nonzero leading term.
  std::vector<Integer> polynomial(int degree, long bound) {
    std::vector<Integer> c;
    for (int i = 0; i < degree; ++i) c.emplace_back(integer(-bound, bound));
    c.emplace_back(nonzero(-bound, bound));
    return c;
  }

  matrixlab::RationalMatrix matrix(std::size_t rows, std::size_t cols, long bound) {
    matrixlab::RationalMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) out(i, j) = rational(bound);
    }
    return out;
  }

  // Product of random rows x rank and rank x cols factors: rank <= `rank`,
  // equal to it almost surely.
  matrixlab::RationalMatrix low_rank(std::size_t rows, std::size_t cols, std::size_t rank, long bound) {
    return matrix(rows, rank, bound) * matrix(rank, cols, bound);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mahlerkit::testing
