#include "mahlerkit/matrixlab/matrix.hpp"

#include <fstream>
#include <sstream>

#include "mahlerkit/errors.hpp"

namespace mahlerkit::matrixlab {

namespace {

using IntRows = std::vector<std::vector<Integer>>;

// Each row scaled by the lcm of its denominators; rank and the vanishing of
// minors are unchanged.
IntRows integer_rows(const RationalMatrix& a, std::vector<Integer>* scales = nullptr) {
  IntRows out(a.rows(), std::vector<Integer>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer den = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) den = lcm(den, Integer(a(i, j).get_den()));
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Rational scaled = a(i, j) * den;
      out[i][j] = scaled.get_num();
    }
    if (scales) scales->push_back(den);
  }
  return out;
}

// Bareiss elimination in place. Returns the rank; *sign tracks row swaps.
// For a square full-rank input the last pivot is the determinant.
long bareiss(IntRows& m, int* sign) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  Integer previous = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap(m[pivot], m[rank]);
      if (sign) *sign = -*sign;
    }
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) / previous;
      }
      m[i][col] = 0;
    }
    previous = m[rank][col];
    ++rank;
  }
  return static_cast<long>(rank);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

RationalMatrix::RationalMatrix(const std::vector<std::vector<Rational>>& rows)
    : rows_(rows.size()), cols_(rows.empty() ? 0 : rows[0].size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DomainError("matrix rows have different lengths");
    for (const auto& x : row) {
      Rational v(x);
      v.canonicalize();
      entries_.push_back(v);
    }
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

RationalMatrix RationalMatrix::parse_csv(std::string_view text) {
  std::vector<std::vector<Rational>> rows;
  std::stringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<Rational> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(parse_rational(trim(cell)));
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows[0].empty()) throw ParseError("matrix CSV has no entries");
  for (const auto& row : rows) {
    if (row.size() != rows[0].size()) throw ParseError("matrix CSV rows have different lengths");
  }
  return RationalMatrix(rows);
}

RationalMatrix RationalMatrix::read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str());
}

RationalMatrix RationalMatrix::select(const std::vector<std::size_t>& row_indices,
                                      const std::vector<std::size_t>& col_indices) const {
  RationalMatrix out(row_indices.size(), col_indices.size());
  for (std::size_t i = 0; i < row_indices.size(); ++i) {
    for (std::size_t j = 0; j < col_indices.size(); ++j) out(i, j) = (*this)(row_indices[i], col_indices[j]);
  }
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

std::string RationalMatrix::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j != 0) out += ",";
      out += to_string((*this)(i, j));
    }
    out += "\n";
  }
  return out;
}

std::vector<std::vector<std::string>> RationalMatrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i].push_back(to_string((*this)(i, j)));
  }
  return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product dimensions do not match");
  RationalMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

long rational_rank(const RationalMatrix& matrix) {
  IntRows m = integer_rows(matrix);
  return bareiss(m, nullptr);
}

Rational determinant(const RationalMatrix& matrix) {
  if (matrix.rows() != matrix.cols()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = matrix.rows();
  if (n == 0) return 1;
  std::vector<Integer> scales;
  IntRows m = integer_rows(matrix, &scales);
  int sign = 1;
  if (bareiss(m, &sign) < static_cast<long>(n)) return 0;
  Rational out(Integer(sign * m[n - 1][n - 1]));
  for (const auto& s : scales) out /= Rational(s);
  out.canonicalize();
  return out;
}

std::vector<Rational> solve(const RationalMatrix& a, const std::vector<Rational>& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw DomainError("solve needs a square system");
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
    m[i][n] = b[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) throw DomainError("singular system");
    std::swap(m[pivot], m[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      const Rational factor = m[i][col] / m[col][col];
      for (std::size_t j = col; j <= n; ++j) m[i][j] -= factor * m[col][j];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return x;
}

BallMatrix::BallMatrix(std::size_t rows, std::size_t cols, Precision prec)
    : rows_(rows), cols_(cols), entries_(rows * cols, ComplexBall(prec)) {}

}  // namespace mahlerkit::matrixlab
