#include "mahlerkit/matrixlab/lemmas.hpp"

#include <numeric>

#include "mahlerkit/algnum/height.hpp"
#include "mahlerkit/errors.hpp"

namespace mahlerkit::matrixlab {

namespace {

using algnum::naive_height;
using algnum::ProjectivePoint;

// First linearly independent columns (or rows, on the transpose) by greedy
// left-to-right elimination.
std::vector<std::size_t> greedy_independent_columns(const RationalMatrix& a, long wanted) {
  std::vector<std::size_t> chosen;
  std::vector<std::size_t> rows(a.rows());
  std::iota(rows.begin(), rows.end(), 0);
  for (std::size_t j = 0; j < a.cols() && static_cast<long>(chosen.size()) < wanted; ++j) {
    std::vector<std::size_t> trial = chosen;
    trial.push_back(j);
    if (rational_rank(a.select(rows, trial)) == static_cast<long>(trial.size())) chosen = std::move(trial);
  }
  return chosen;
}

// Pivots first, then the remaining indices in ascending order.
std::vector<std::size_t> pivots_first(const std::vector<std::size_t>& pivots, std::size_t count) {
  std::vector<std::size_t> order = pivots;
  std::vector<bool> used(count, false);
  for (auto p : pivots) used[p] = true;
  for (std::size_t i = 0; i < count; ++i) {
    if (!used[i]) order.push_back(i);
  }
  return order;
}

Integer max_entry_height(const RationalMatrix& a) {
  Integer out = 1;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out = std::max(out, naive_height(a(i, j)));
  }
  return out;
}

std::string dims(const RationalMatrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

FactorizationCertificate lemma2_factor(const RationalMatrix& matrix, long rank) {
  const long actual = rational_rank(matrix);
  if (actual != rank) throw RankMismatch(rank, actual);
  const std::size_t r = static_cast<std::size_t>(rank);
  const std::size_t m = matrix.rows();
  const std::size_t n = matrix.cols();

  FactorizationCertificate cert;
  cert.rank = rank;
  const auto pivot_cols = greedy_independent_columns(matrix, rank);
  std::vector<std::size_t> all_rows(m);
  std::iota(all_rows.begin(), all_rows.end(), 0);
  const auto pivot_rows = greedy_independent_columns(matrix.select(all_rows, pivot_cols).transpose(), rank);
  cert.col_order = pivots_first(pivot_cols, n);
  cert.row_order = pivots_first(pivot_rows, m);
  cert.permuted = matrix.select(cert.row_order, cert.col_order);
  cert.height_base = max_entry_height(matrix);

  std::vector<std::size_t> lead(r);
  std::iota(lead.begin(), lead.end(), 0);
  const RationalMatrix minor = cert.permuted.select(lead, lead);
  cert.pivot_determinant = determinant(minor);

  std::vector<std::size_t> all_permuted_rows(m);
  std::iota(all_permuted_rows.begin(), all_permuted_rows.end(), 0);
  cert.left = cert.permuted.select(all_permuted_rows, lead);
  cert.right = RationalMatrix(r, n);
  for (std::size_t k = 0; k < r; ++k) cert.right(k, k) = 1;

  bool cramer_ok = true;
  for (std::size_t j = r; j < n; ++j) {
    std::vector<Rational> column(r);
    for (std::size_t i = 0; i < r; ++i) column[i] = cert.permuted(i, j);
    const auto solution = solve(minor, column);
    for (std::size_t k = 0; k < r; ++k) {
      cert.right(k, j) = solution[k];
      // Delete column k from [minor | column j]; the sign moves column j back
      // into slot k.
      std::vector<std::size_t> kept;
      for (std::size_t c = 0; c < r; ++c) {
        if (c != k) kept.push_back(c);
      }
      kept.push_back(j);
      const Rational deleted = determinant(cert.permuted.select(lead, kept));
      const Rational sign = ((r - 1 - k) % 2 == 0) ? 1 : -1;
      if (cert.pivot_determinant * solution[k] != sign * deleted) cramer_ok = false;
    }
  }

  const bool product_ok = cert.left * cert.right == cert.permuted;
  cert.checks.rows.push_back({"product", "B'B''", "B (permuted, " + dims(matrix) + ")", "==", product_ok,
                              "exact rational product"});
  cert.checks.rows.push_back({"cramer", "Delta * B''_kj", "(-1)^(r-k) * minor without column k", "==", cramer_ok,
                              "every tail entry"});

  const Integer left_cap = pow(cert.height_base, m);
  for (std::size_t k = 0; k < r; ++k) {
    std::vector<Rational> coords{Rational(1)};
    for (std::size_t i = 0; i < m; ++i) coords.push_back(cert.left(i, k));
    const Integer height = ProjectivePoint(coords).naive_height();
    cert.checks.rows.push_back({"left column " + std::to_string(k + 1), "H(1:B'_col) = " + to_string(height),
                                "B^m = " + to_string(left_cap), "<=", height <= left_cap,
                                "exp form of h <= m log B"});
  }
  const Integer right_cap = pow(cert.height_base, r * n) * factorial(r);
  for (std::size_t k = 0; k < r; ++k) {
    std::vector<Rational> coords{Rational(1)};
    for (std::size_t j = 0; j < n; ++j) coords.push_back(cert.right(k, j));
    const Integer height = ProjectivePoint(coords).naive_height();
    cert.checks.rows.push_back({"right row " + std::to_string(k + 1), "H(1:B''_row) = " + to_string(height),
                                "B^(rn) r! = " + to_string(right_cap), "<=", height <= right_cap,
                                "exp form of h <= rn log B + log r!"});
  }
  return cert;
}

RealBall lemma1_log_bound(long n, long degree, const RealBall& log_base) {
  if (n < 1 || degree < 1) throw DomainError("distance bound needs n >= 1 and D >= 1");
  const Precision prec = log_base.precision();
  if (!certainly_less_equal(RealBall::log2(prec), log_base)) {
    throw DomainError("distance bound needs B >= 2");
  }
  const RealBall log_n = log(RealBall::from_long(n, prec));
  return -(RealBall::from_long(n * degree, prec) * log_n) -
         RealBall::from_long(n * (n + 1) * degree, prec) * log_base;
}

RealBall lemma1_log_bound(long n, long degree, const Rational& base, Precision prec) {
  if (base < 2) throw DomainError("distance bound needs B >= 2");
  if (n < 1 || degree < 1) throw DomainError("distance bound needs n >= 1 and D >= 1");
  const RealBall log_n = log(RealBall::from_long(n, prec));
  const RealBall log_base = log(RealBall::from_rational(base, prec));
  return -(RealBall::from_long(n * degree, prec) * log_n) -
         RealBall::from_long(n * (n + 1) * degree, prec) * log_base;
}

Lemma1Result lemma1_check(const RationalMatrix& b, const BallMatrix& l, long declared_rank_l, long degree,
                          Precision prec) {
  if (b.rows() != l.rows() || b.cols() != l.cols()) throw DomainError("B and L must have the same size");
  if (declared_rank_l < 0) throw DomainError("rank of L must be nonnegative");
  Lemma1Result out;
  out.rank_b = rational_rank(b);
  out.declared_rank_l = declared_rank_l;
  CheckRow rank_row{"rank(B) > rank(L)", std::to_string(out.rank_b), std::to_string(declared_rank_l), ">",
                    out.rank_b > declared_rank_l, "rank of L known by construction"};
  if (!rank_row.pass) throw HypothesisViolation(rank_row);
  out.report.rows.push_back(rank_row);

  out.base = std::max(Integer(2), max_entry_height(b));
  out.log_bound = lemma1_log_bound(static_cast<long>(b.cols()), degree, Rational(out.base), prec);

  out.distance = RealBall(prec);
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      const ComplexBall beta(RealBall::from_rational(b(i, j), prec));
      out.distance = max(out.distance, abs(l(i, j) - beta));
    }
  }
  const bool pass = out.distance.is_positive() && certainly_less_equal(out.log_bound, log(out.distance));
  out.report.rows.push_back({"max |lambda - beta| >= n^(-nD) B^(-n(n+1)D)",
                             "log distance = " + (out.distance.is_positive() ? log(out.distance).to_string(10)
                                                                              : std::string("-inf")),
                             "log bound = " + out.log_bound.to_string(10), ">=", pass,
                             "B = " + to_string(out.base)});
  return out;
}

}  // namespace mahlerkit::matrixlab
