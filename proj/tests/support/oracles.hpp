#pragma once

// Independent reference computations. None of these call into the library
// routines they are used to check.

#include <mpfr.h>

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "mahlerkit/exact.hpp"

namespace mahlerkit::testing {

// Mahler measure from Durand-Kerner roots in long double: a different
// iteration, a different arithmetic and no certification.
inline long double durand_kerner_measure(const std::vector<Integer>& coefficients) {
  std::vector<long double> c;
  for (const auto& x : coefficients) c.push_back(x.get_d());
  while (!c.empty() && c.back() == 0.0L) c.pop_back();
  const long double lead = c.back();
  const int degree = static_cast<int>(c.size()) - 1;
  std::size_t zeros = 0;
  while (zeros < c.size() && c[zeros] == 0.0L) ++zeros;
  if (degree == 0) return std::abs(lead);
  using C = std::complex<long double>;
  std::vector<C> z(static_cast<std::size_t>(degree));
  const C seed(0.4L, 0.9L);
  for (int i = 0; i < degree; ++i) z[static_cast<std::size_t>(i)] = std::pow(seed, i);
  auto eval = [&](C x) {
    C acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc / lead;
  };
  for (int iter = 0; iter < 5000; ++iter) {
    long double change = 0;
    for (int i = 0; i < degree; ++i) {
      C denom = 1;
      for (int j = 0; j < degree; ++j) {
        if (i != j) denom *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
      }
      const C step = eval(z[static_cast<std::size_t>(i)]) / denom;
      z[static_cast<std::size_t>(i)] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-30L) break;
  }
  long double m = std::abs(lead);
  for (const auto& root : z) m *= std::max(1.0L, std::abs(root));
  return m;
}

// Value of an MPFR function at a long argument, as a long double, computed
// at `bits` bits.
template <class F>
long double mpfr_eval(long argument, F&& f, mpfr_prec_t bits = 512) {
  mpfr_t x;
  mpfr_init2(x, bits);
  mpfr_set_si(x, argument, MPFR_RNDN);
  f(x);
  const long double out = mpfr_get_ld(x, MPFR_RNDN);
  mpfr_clear(x);
  return out;
}

// ||e^b|| and ||log a|| at 4096 bits.
inline long double distance_exp(long b) {
  mpfr_t x, n;
  mpfr_inits2(4096, x, n, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_si(x, b, MPFR_RNDN);
  mpfr_exp(x, x, MPFR_RNDN);
  mpfr_rint(n, x, MPFR_RNDN);
  mpfr_sub(x, x, n, MPFR_RNDN);
  const long double out = std::abs(mpfr_get_ld(x, MPFR_RNDN));
  mpfr_clears(x, n, static_cast<mpfr_ptr>(nullptr));
  return out;
}

inline long double distance_log(long a) {
  mpfr_t x, n;
  mpfr_inits2(4096, x, n, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_si(x, a, MPFR_RNDN);
  mpfr_log(x, x, MPFR_RNDN);
  mpfr_rint(n, x, MPFR_RNDN);
  mpfr_sub(x, x, n, MPFR_RNDN);
  const long double out = std::abs(mpfr_get_ld(x, MPFR_RNDN));
  mpfr_clears(x, n, static_cast<mpfr_ptr>(nullptr));
  return out;
}

// Nearest integer to e^b at 4096 bits.
inline Integer round_exp(long b) {
  mpfr_t x;
  mpfr_init2(x, 4096);
  mpfr_set_si(x, b, MPFR_RNDN);
  mpfr_exp(x, x, MPFR_RNDN);
  mpfr_rint(x, x, MPFR_RNDN);
  Integer out;
  mpfr_get_z(out.get_mpz_t(), x, MPFR_RNDN);
  mpfr_clear(x);
  return out;
}

// Continued fraction of a value known to 4096 bits, by the textbook floor
// recurrence on exact rationals.
template <class F>
std::vector<Integer> continued_fraction(F&& set_value, std::size_t count) {
  mpfr_t x;
  mpfr_init2(x, 4096);
  set_value(x);
  Rational q;
  mpfr_get_q(q.get_mpq_t(), x);
  mpfr_clear(x);
  std::vector<Integer> out;
  for (std::size_t k = 0; k < count; ++k) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    out.push_back(a);
    q -= a;
    if (q == 0) break;
    q = 1 / q;
  }
  return out;
}

// Best rank-k approximation (singular value truncation) in long double,
// returned as factors U (rows x k) and V (k x cols) of doubles so that
// the product U V has rank <= k exactly.
struct LowRankFactors {
  std::vector<std::vector<double>> left;   // rows x k
  std::vector<std::vector<double>> right;  // k x cols
};

inline LowRankFactors truncated_svd(const std::vector<std::vector<long double>>& a, int k) {
  using M = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const auto rows = static_cast<Eigen::Index>(a.size());
  const auto cols = static_cast<Eigen::Index>(a[0].size());
  M m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  Eigen::JacobiSVD<M> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  LowRankFactors out;
  out.left.assign(a.size(), std::vector<double>(static_cast<std::size_t>(k)));
  out.right.assign(static_cast<std::size_t>(k), std::vector<double>(a[0].size()));
  for (int s = 0; s < k; ++s) {
    const long double sigma = svd.singularValues()(s);
    for (Eigen::Index i = 0; i < rows; ++i) {
      out.left[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] =
          static_cast<double>(sigma * svd.matrixU()(i, s));
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      out.right[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)] = static_cast<double>(svd.matrixV()(j, s));
    }
  }
  return out;
}

}  // namespace mahlerkit::testing
