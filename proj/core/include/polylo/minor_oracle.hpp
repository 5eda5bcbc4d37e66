#pragma once

#include <cstddef>
#include <span>

#include "polylo/detail/integer_image.hpp"
#include "polylo/matrix.hpp"

namespace polylo {

/// Singularity and rank queries on submatrices of one fixed matrix.
///
/// Real inputs are answered on an integer image in __int128 when nothing
/// overflows; everything else goes through exact Scalar elimination. The
/// answers are the same either way.
class MinorOracle {
 public:
  explicit MinorOracle(Matrix m);

  const Matrix& matrix() const { return m_; }

  std::size_t rank(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  bool nonsingular(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    return rows.size() == cols.size() && rank(rows, cols) == rows.size();
  }

 private:
  Matrix m_;
  std::optional<detail::IntegerImage> image_;
};

}  // namespace polylo
