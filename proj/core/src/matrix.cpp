#include "polylo/matrix.hpp"

#include <algorithm>
#include <string>

#include "polylo/errors.hpp"

namespace polylo {

IndexSet all_indices(std::size_t n) {
  IndexSet out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = k;
  return out;
}

IndexSet complement(const IndexSet& set, std::size_t n) {
  std::vector<bool> in(n, false);
  for (auto k : set) {
    if (k >= n) throw DimensionError("complement: index out of range");
    in[k] = true;
  }
  IndexSet out;
  for (std::size_t k = 0; k < n; ++k) {
    if (!in[k]) out.push_back(k);
  }
  return out;
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw DimensionError("Matrix: expected " + std::to_string(rows * cols) + " entries, got " +
                         std::to_string(data_.size()));
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("Matrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
  return m;
}

Matrix Matrix::constant(std::size_t rows, std::size_t cols, const Scalar& value) {
  return Matrix(rows, cols, std::vector<Scalar>(rows * cols, value));
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

bool Matrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch");
  }
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "matrix +");
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  }
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "matrix -");
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  }
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix *: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

Scalar det(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("det: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Matrix a = m;
  Scalar prev = 1;
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a(p, k).is_zero()) ++p;
      if (p == n) return 0;
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(p, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  Scalar d = a(n - 1, n - 1);
  return negate ? -d : d;
}

std::size_t rank(const Matrix& m) {
  Matrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t r = 0;
  Scalar prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(a(r, j), a(p, j));
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a(i, j) = (a(i, j) * a(r, c) - a(i, c) * a(r, j)) / prev;
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

Matrix submatrix(const Matrix& m, const IndexSet& rows, const IndexSet& cols) {
  for (auto i : rows) {
    if (i >= m.rows()) throw DimensionError("submatrix: row index out of range");
  }
  for (auto j : cols) {
    if (j >= m.cols()) throw DimensionError("submatrix: column index out of range");
  }
  Matrix out(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) out(a, b) = m(rows[a], cols[b]);
  }
  return out;
}

bool rank_at_most_one(const Matrix& m) {
  std::size_t pi = 0;
  std::size_t pj = 0;
  bool found = false;
  for (std::size_t i = 0; i < m.rows() && !found; ++i) {
    for (std::size_t j = 0; j < m.cols() && !found; ++j) {
      if (!m(i, j).is_zero()) {
        pi = i;
        pj = j;
        found = true;
      }
    }
  }
  if (!found) return true;
  const Scalar& pivot = m(pi, pj);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) * pivot != m(i, pj) * m(pi, j)) return false;
    }
  }
  return true;
}

std::size_t hamming_distance(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "hamming_distance");
  std::size_t count = 0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    if (a.entries()[k] != b.entries()[k]) ++count;
  }
  return count;
}

std::size_t count_nonzero(const Matrix& m) {
  return static_cast<std::size_t>(
      std::count_if(m.entries().begin(), m.entries().end(), [](const Scalar& s) { return !s.is_zero(); }));
}

Matrix solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("solve: row counts differ");
  const std::size_t rows = a.rows();
  const std::size_t n = a.cols();
  const std::size_t k = b.cols();
  Matrix aug(rows, n + k);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < k; ++j) aug(i, n + j) = b(i, j);
  }
  // Gauss–Jordan to reduced row echelon form on the coefficient block.
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && aug(p, c).is_zero()) ++p;
    if (p == rows) continue;
    for (std::size_t j = 0; j < n + k; ++j) std::swap(aug(r, j), aug(p, j));
    const Scalar inv = Scalar(1) / aug(r, c);
    for (std::size_t j = c; j < n + k; ++j) aug(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || aug(i, c).is_zero()) continue;
      const Scalar f = aug(i, c);
      for (std::size_t j = c; j < n + k; ++j) aug(i, j) -= f * aug(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (!aug(i, n + j).is_zero()) throw DomainError("solve: inconsistent system");
    }
  }
  Matrix x(n, k);
  for (std::size_t t = 0; t < pivot_cols.size(); ++t) {
    for (std::size_t j = 0; j < k; ++j) x(pivot_cols[t], j) = aug(t, n + j);
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("inverse: matrix is not square");
  if (rank(m) != m.rows()) throw DomainError("inverse: matrix is singular");
  return solve(m, Matrix::identity(m.rows()));
}

IndexSet independent_rows(const Matrix& m) {
  IndexSet chosen;
  // Incremental echelon basis: reduce each row against the basis so far.
  std::vector<std::vector<Scalar>> basis;
  std::vector<std::size_t> lead;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<Scalar> row(m.entries().begin() + static_cast<std::ptrdiff_t>(i * m.cols()),
                            m.entries().begin() + static_cast<std::ptrdiff_t>((i + 1) * m.cols()));
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Scalar f = row[lead[b]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < m.cols(); ++j) row[j] -= f * basis[b][j];
    }
    std::size_t c = 0;
    while (c < m.cols() && row[c].is_zero()) ++c;
    if (c == m.cols()) continue;
    const Scalar inv = Scalar(1) / row[c];
    for (auto& x : row) x *= inv;
    // Keep the basis reduced so later eliminations stay single-pass.
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Scalar f = basis[b][c];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < m.cols(); ++j) basis[b][j] -= f * row[j];
    }
    basis.push_back(std::move(row));
    lead.push_back(c);
    chosen.push_back(i);
  }
  return chosen;
}

}  // namespace polylo
