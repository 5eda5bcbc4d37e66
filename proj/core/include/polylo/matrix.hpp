#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "polylo/scalar.hpp"

namespace polylo {

/// Ordered list of 0-based row/column/axis indices.
using IndexSet = std::vector<std::size_t>;

IndexSet all_indices(std::size_t n);
/// Indices of [0, n) not in `set`, ascending.
IndexSet complement(const IndexSet& set, std::size_t n);

/// Dense row-major matrix of exact scalars.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix constant(std::size_t rows, std::size_t cols, const Scalar& value);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const Scalar> entries() const { return data_; }

  Matrix transpose() const;
  bool is_symmetric() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);

/// Exact determinant by fraction-free (Bareiss) elimination.
Scalar det(const Matrix& m);

/// Exact rank over ℚ(i).
std::size_t rank(const Matrix& m);

/// A[I, J], preserving the order of I and J.
Matrix submatrix(const Matrix& m, const IndexSet& rows, const IndexSet& cols);

/// True iff every 2×2 minor vanishes (rank ≤ 1), decided without division.
bool rank_at_most_one(const Matrix& m);

/// ‖A − B‖₀: number of positions where the matrices differ.
std::size_t hamming_distance(const Matrix& a, const Matrix& b);
std::size_t count_nonzero(const Matrix& m);

Matrix inverse(const Matrix& m);

/// Some X with A·X = B (free variables set to zero). DomainError if the
/// system is inconsistent.
Matrix solve(const Matrix& a, const Matrix& b);

/// Greedy lexicographic basis of the row space: the first row that is not in
/// the span of the rows already chosen is taken, in index order.
IndexSet independent_rows(const Matrix& m);

}  // namespace polylo
