#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mahlerkit/ball.hpp"
#include "mahlerkit/exact.hpp"

namespace mahlerkit::matrixlab {

// Dense matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  // Rows must all have the same length.
  explicit RationalMatrix(const std::vector<std::vector<Rational>>& rows);

  static RationalMatrix identity(std::size_t n);
  // One row per line, entries separated by commas: "1/2, -3, 0.25".
  // Blank lines and lines starting with '#' are ignored.
  static RationalMatrix parse_csv(std::string_view text);
  static RationalMatrix read_csv(const std::string& path);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  // Submatrix with the given rows and columns, in the given order.
  RationalMatrix select(const std::vector<std::size_t>& row_indices,
                        const std::vector<std::size_t>& col_indices) const;
  RationalMatrix transpose() const;

  std::string to_csv() const;
  // [["1/2","3"],...] style nested string list.
  std::vector<std::vector<std::string>> to_strings() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

// Exact rank over Q by fraction-free (Bareiss) elimination.
long rational_rank(const RationalMatrix& matrix);

// Exact determinant of a square matrix.
Rational determinant(const RationalMatrix& matrix);

// Solves A x = b exactly for a regular square A by Gaussian elimination.
std::vector<Rational> solve(const RationalMatrix& a, const std::vector<Rational>& b);

// Matrix of complex balls.
class BallMatrix {
 public:
  BallMatrix() = default;
  BallMatrix(std::size_t rows, std::size_t cols, Precision prec = kDefaultPrecision);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const ComplexBall& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  ComplexBall& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ComplexBall> entries_;
};

}  // namespace mahlerkit::matrixlab
