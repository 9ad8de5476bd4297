#pragma once

#include <vector>

#include "mahlerkit/ball.hpp"
#include "mahlerkit/matrixlab/matrix.hpp"
#include "mahlerkit/report.hpp"

namespace mahlerkit::matrixlab {

// Rank factorization of an exact matrix with its height certificate.
struct FactorizationCertificate {
  long rank = 0;
  // permuted(i, j) = input(row_order[i], col_order[j]); pivots come first.
  std::vector<std::size_t> row_order;
  std::vector<std::size_t> col_order;
  RationalMatrix permuted;
  // Determinant of the leading rank x rank minor of `permuted` (1 for rank 0).
  Rational pivot_determinant = 1;
  RationalMatrix left;   // m x r: the pivot columns
  RationalMatrix right;  // r x n: identity block, then the solved tail
  // exp of the largest entry height, as an integer.
  Integer height_base = 1;
  // Product identity, Cramer cross-check and one row per height inequality.
  Report checks;
};

// Factors B (after permutation) as B' B'' with B' the pivot columns and B''
// = [I | solved tail]. Throws RankMismatch when `rank` is not the exact rank.
FactorizationCertificate lemma2_factor(const RationalMatrix& matrix, long rank);

// log of n^(-nD) B^(-n(n+1)D). Throws DomainError unless log_base >= log 2
// is certain.
RealBall lemma1_log_bound(long n, long degree, const RealBall& log_base);
// Same with B given exactly; DomainError when B < 2.
RealBall lemma1_log_bound(long n, long degree, const Rational& base, Precision prec = kDefaultPrecision);

struct Lemma1Result {
  long rank_b = 0;
  long declared_rank_l = 0;
  Integer base = 2;      // max(2, exp of the largest entry height)
  RealBall distance;     // max_ij |lambda_ij - beta_ij|
  RealBall log_bound;
  Report report;
};

// Checks max |L - B| >= n^(-nD) B^(-n(n+1)D), n the number of columns. The
// rank of L is supplied by the caller (known by construction); a rank that
// does not stay below rank(B) raises HypothesisViolation.
Lemma1Result lemma1_check(const RationalMatrix& b, const BallMatrix& l, long declared_rank_l, long degree = 1,
                          Precision prec = kDefaultPrecision);

}  // namespace mahlerkit::matrixlab
