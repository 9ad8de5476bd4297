#include "mahlerkit/matrixlab/logmatrix.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mahlerkit/errors.hpp"

namespace mahlerkit::matrixlab {

namespace {

std::vector<long> sieve_primes(std::size_t count) {
  // The 10000th prime is 104729.
  const long limit = 105000;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  std::vector<long> out;
  for (long p = 2; p <= limit && out.size() < count; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    out.push_back(p);
    for (long q = p * p; q <= limit; q += p) composite[static_cast<std::size_t>(q)] = true;
  }
  return out;
}

// Splits the values into a pairwise coprime set of integers > 1 such that
// each value is a product of powers of them.
std::vector<Integer> coprime_base(std::vector<Integer> values) {
  std::vector<Integer> base;
  while (!values.empty()) {
    Integer x = values.back();
    values.pop_back();
    if (x == 1) continue;
    bool split = false;
    for (std::size_t k = 0; k < base.size(); ++k) {
      const Integer g = gcd(x, base[k]);
      if (g == 1) continue;
      const Integer other = base[k];
      base.erase(base.begin() + static_cast<long>(k));
      values.push_back(g);
      values.push_back(x / g);
      values.push_back(other / g);
      split = true;
      break;
    }
    if (!split) base.push_back(x);
  }
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  return base;
}

using Vector = std::vector<long>;

// w_j(t) = sum_i t_i v_ij over the shared base.
std::vector<Vector> column_combinations(const LogMatrix& matrix, const std::vector<long>& t) {
  const std::size_t width = matrix.base().size();
  std::vector<Vector> w(matrix.cols(), Vector(width, 0));
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    if (t[i] == 0) continue;
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      const auto& v = matrix.exponents(i, j);
      for (std::size_t k = 0; k < width; ++k) w[j][k] += t[i] * v[k];
    }
  }
  return w;
}

// Odometer over [-bound, bound]^size, last coordinate fastest, starting at
// (-bound, ..., -bound). Returns false after the last tuple.
bool advance(std::vector<long>& tuple, long bound, std::size_t* changed = nullptr) {
  for (std::size_t k = tuple.size(); k-- > 0;) {
    if (tuple[k] < bound) {
      ++tuple[k];
      if (changed) *changed = k;
      return true;
    }
    tuple[k] = -bound;
  }
  return false;
}

bool is_zero(const std::vector<long>& v) {
  return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
}

// First nonzero s in lexicographic order with sum_j s_j w_j = 0.
std::optional<std::vector<long>> first_kernel_vector(const std::vector<Vector>& w, long S) {
  const std::size_t n = w.size();
  const std::size_t width = n == 0 ? 0 : w[0].size();
  std::vector<long> s(n, -S);
  Vector sum(width, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < width; ++k) sum[k] -= S * w[j][k];
  }
  while (true) {
    if (is_zero(sum) && !is_zero(s)) return s;
    // Incremental update: the changed coordinate goes up by one and every
    // later coordinate wraps from S to -S.
    std::size_t changed = 0;
    if (!advance(s, S, &changed)) return std::nullopt;
    for (std::size_t k = 0; k < width; ++k) sum[k] += w[changed][k];
    for (std::size_t j = changed + 1; j < n; ++j) {
      for (std::size_t k = 0; k < width; ++k) sum[k] -= 2 * S * w[j][k];
    }
  }
}

std::uint64_t box_size(long bound, std::size_t dims, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::size_t k = 0; k < dims; ++k) {
    const std::uint64_t side = static_cast<std::uint64_t>(2 * bound + 1);
    if (out > cap / side + 1) return cap + 1;
    out *= side;
  }
  return out;
}

}  // namespace

const std::vector<long>& prime_table() {
  static const std::vector<long> primes = sieve_primes(kPrimeTableSize);
  return primes;
}

LogMatrix::LogMatrix(const RationalMatrix& bases) : bases_(bases) {
  const auto& primes = prime_table();
  std::set<long> used_primes;
  std::vector<Integer> cofactors;
  // Per entry: small-prime exponents and the two cofactors left over.
  struct Partial {
    std::map<long, long> small;
    Integer num_rest, den_rest;
  };
  std::vector<Partial> partial;
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) {
      const Rational& a = bases_(i, j);
      if (a <= 0) throw DomainError("log matrix entries must be positive rationals");
      Partial part{{}, a.get_num(), a.get_den()};
      for (Integer* x : {&part.num_rest, &part.den_rest}) {
        const long sign = x == &part.num_rest ? 1 : -1;
        for (long p : primes) {
          if (*x == 1) break;
          if (Integer(p) * p > *x) break;
          while (mpz_divisible_ui_p(x->get_mpz_t(), static_cast<unsigned long>(p)) != 0) {
            *x /= p;
            part.small[p] += sign;
            used_primes.insert(p);
          }
        }
        if (*x != 1) cofactors.push_back(*x);
      }
      partial.push_back(std::move(part));
    }
  }
  // Cofactors are primes (below the table bound squared) or large numbers
  // without small factors; a coprime base covers both.
  std::vector<Integer> extra = coprime_base(cofactors);
  std::vector<Integer> small_part;
  for (long p : used_primes) small_part.emplace_back(p);
  // Merge: a cofactor that is itself a table prime must not appear twice.
  std::vector<Integer> all = small_part;
  for (const auto& x : extra) all.push_back(x);
  base_ = coprime_base(all);

  exponents_.assign(rows() * cols(), std::vector<long>(base_.size(), 0));
  for (std::size_t e = 0; e < partial.size(); ++e) {
    const auto& part = partial[e];
    auto& v = exponents_[e];
    Integer num = 1, den = 1;
    for (const auto& [p, k] : part.small) {
      if (k > 0) num *= pow(Integer(p), static_cast<unsigned long>(k));
      else den *= pow(Integer(p), static_cast<unsigned long>(-k));
    }
    num *= part.num_rest;
    den *= part.den_rest;
    for (std::size_t k = 0; k < base_.size(); ++k) {
      while (mpz_divisible_p(num.get_mpz_t(), base_[k].get_mpz_t()) != 0) {
        num /= base_[k];
        ++v[k];
      }
      while (mpz_divisible_p(den.get_mpz_t(), base_[k].get_mpz_t()) != 0) {
        den /= base_[k];
        --v[k];
      }
    }
    if (num != 1 || den != 1) throw DomainError("internal: entry not covered by the coprime base");
  }
}

Rational LogMatrix::reconstruct(std::size_t i, std::size_t j) const {
  Rational out = 1;
  const auto& v = exponents(i, j);
  for (std::size_t k = 0; k < base_.size(); ++k) out *= pow(Rational(base_[k]), v[k]);
  return out;
}

BallMatrix LogMatrix::logs(Precision prec) const {
  BallMatrix out(rows(), cols(), prec);
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) {
      const Rational& a = bases_(i, j);
      const RealBall value = log(RealBall::from_integer(a.get_num(), prec)) -
                             log(RealBall::from_integer(a.get_den(), prec));
      out(i, j) = ComplexBall(value);
    }
  }
  return out;
}

LogMatrix make_lic_matrix(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw DomainError("matrix dimensions must be positive");
  if (m * n > kPrimeTableSize) throw DomainError("m n exceeds the prime table");
  RationalMatrix bases(m, n);
  const auto& primes = prime_table();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) bases(i, j) = primes[i * n + j];
  }
  return LogMatrix(bases);
}

bool lic_relation(const LogMatrix& matrix, const std::vector<long>& t, const std::vector<long>& s) {
  if (t.size() != matrix.rows() || s.size() != matrix.cols()) throw DomainError("tuple sizes do not match");
  const auto w = column_combinations(matrix, t);
  Vector sum(matrix.base().size(), 0);
  for (std::size_t j = 0; j < w.size(); ++j) {
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += s[j] * w[j][k];
  }
  return is_zero(sum);
}

LicResult lic_check_box(const LogMatrix& matrix, long T, long S, std::uint64_t budget, const Executor& executor) {
  if (T < 0 || S < 0) throw DomainError("box bounds must be nonnegative");
  LicResult out;
  const std::uint64_t ts = box_size(T, matrix.rows(), budget) - 1;
  const std::uint64_t ss = box_size(S, matrix.cols(), budget) - 1;
  if (ts != 0 && ss != 0 && (ts > budget || ss > budget || ts > budget / ss)) {
    throw BudgetExceeded("box of nonzero pairs exceeds the budget of " + std::to_string(budget));
  }
  out.pairs = ts * ss;
  if (out.pairs == 0) return out;

  // One slot per value of t_1; each slot keeps its lexicographically first
  // witness.
  const std::size_t slots = static_cast<std::size_t>(2 * T + 1);
  std::vector<std::optional<LicWitness>> found(slots);
  executor.for_each(slots, [&](std::size_t slot) {
    std::vector<long> t(matrix.rows(), -T);
    t[0] = static_cast<long>(slot) - T;
    std::vector<long> rest(t.begin() + 1, t.end());
    while (true) {
      std::copy(rest.begin(), rest.end(), t.begin() + 1);
      if (!is_zero(t)) {
        if (auto s = first_kernel_vector(column_combinations(matrix, t), S)) {
          found[slot] = LicWitness{t, *s};
          return;
        }
      }
      if (!advance(rest, T)) return;
    }
  });
  for (auto& w : found) {
    if (w) {
      out.pass = false;
      out.witness = std::move(w);
      break;
    }
  }
  return out;
}

Lemma3Count lemma3_count(const LogMatrix& matrix, const std::vector<long>& t, long S) {
  if (t.size() != matrix.rows()) throw DomainError("t has the wrong length");
  if (is_zero(t)) throw DomainError("t must be nonzero");
  if (S < 0) throw DomainError("S must be nonnegative");
  const auto w = column_combinations(matrix, t);
  const std::size_t width = matrix.base().size();
  std::set<Vector> seen;
  std::vector<long> s(matrix.cols(), -S);
  do {
    Vector sum(width, 0);
    for (std::size_t j = 0; j < w.size(); ++j) {
      for (std::size_t k = 0; k < width; ++k) sum[k] += s[j] * w[j][k];
    }
    seen.insert(std::move(sum));
  } while (advance(s, S));
  Lemma3Count out;
  out.count = seen.size();
  out.threshold = pow(Integer(2 * S + 1), static_cast<unsigned long>(matrix.cols() - 1));
  out.pass = Integer(static_cast<unsigned long>(out.count)) >= out.threshold;
  return out;
}

}  // namespace mahlerkit::matrixlab
