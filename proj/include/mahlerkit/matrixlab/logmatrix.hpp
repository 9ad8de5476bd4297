#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mahlerkit/exact.hpp"
#include "mahlerkit/matrixlab/matrix.hpp"
#include "mahlerkit/parallel.hpp"

namespace mahlerkit::matrixlab {

inline constexpr std::size_t kPrimeTableSize = 10000;
inline constexpr std::uint64_t kDefaultPairBudget = 100000000;

// The first kPrimeTableSize primes.
const std::vector<long>& prime_table();

// Matrix of logarithms lambda_ij = log alpha_ij of positive rationals. Each
// alpha_ij is stored as an exponent vector over a pairwise coprime base
// (small primes plus coprime cofactors), so multiplicative relations are
// decided exactly.
class LogMatrix {
 public:
  // Throws DomainError for a nonpositive entry.
  explicit LogMatrix(const RationalMatrix& bases);

  std::size_t rows() const { return bases_.rows(); }
  std::size_t cols() const { return bases_.cols(); }
  const RationalMatrix& bases() const { return bases_; }

  // Pairwise coprime integers > 1.
  const std::vector<Integer>& base() const { return base_; }
  // Exponent of base()[k] in alpha_ij.
  const std::vector<long>& exponents(std::size_t i, std::size_t j) const { return exponents_[i * cols() + j]; }

  // Rebuilds alpha_ij from its exponent vector.
  Rational reconstruct(std::size_t i, std::size_t j) const;
  // Matrix of the logarithms as balls (imaginary parts zero).
  BallMatrix logs(Precision prec) const;

 private:
  RationalMatrix bases_;
  std::vector<Integer> base_;
  std::vector<std::vector<long>> exponents_;
};

// alpha_ij = the (i n + j)-th prime (0-based), so the linear independence
// condition holds for every pair of nonzero integer tuples.
LogMatrix make_lic_matrix(std::size_t m, std::size_t n);

// True when sum t_i s_j lambda_ij = 0, i.e. prod alpha_ij^(t_i s_j) = 1.
bool lic_relation(const LogMatrix& matrix, const std::vector<long>& t, const std::vector<long>& s);

struct LicWitness {
  std::vector<long> t;
  std::vector<long> s;
};

struct LicResult {
  bool pass = true;
  std::optional<LicWitness> witness;  // lexicographically first in (t, s)
  std::uint64_t pairs = 0;            // size of the box of nonzero pairs
};

// Searches all nonzero t in Z^m[T], s in Z^n[S] (coordinates in [-T, T] and
// [-S, S]) for a relation. Throws BudgetExceeded when the box has more than
// `budget` pairs. Work is split by the first coordinate of t; the reported
// witness does not depend on `executor`.
LicResult lic_check_box(const LogMatrix& matrix, long T, long S, std::uint64_t budget = kDefaultPairBudget,
                        const Executor& executor = Executor{});

struct Lemma3Count {
  std::uint64_t count = 0;
  Integer threshold;  // (2S+1)^(n-1)
  bool pass = false;
};

// Number of distinct values prod_ij alpha_ij^(t_i s_j) over s in Z^n[S].
// DomainError when t is zero.
Lemma3Count lemma3_count(const LogMatrix& matrix, const std::vector<long>& t, long S);

}  // namespace mahlerkit::matrixlab
