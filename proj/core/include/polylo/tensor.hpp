#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "polylo/detail/integer_image.hpp"
#include "polylo/matrix.hpp"
#include "polylo/scalar.hpp"

namespace polylo {

/// Dense d-dimensional array, row-major (last axis fastest).
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> dims);
  Tensor(std::vector<std::size_t> dims, std::vector<Scalar> entries);

  static Tensor constant(std::vector<std::size_t> dims, const Scalar& value);
  static Tensor from_matrix(const Matrix& m);
  static Tensor from_vector(std::span<const Scalar> v);

  std::size_t order() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t size() const { return data_.size(); }

  std::span<const Scalar> entries() const { return data_; }
  const Scalar& operator[](std::size_t flat) const { return data_[flat]; }
  Scalar& operator[](std::size_t flat) { return data_[flat]; }
  const Scalar& at(std::span<const std::size_t> index) const { return data_[flat_index(index)]; }
  Scalar& at(std::span<const std::size_t> index) { return data_[flat_index(index)]; }

  std::size_t flat_index(std::span<const std::size_t> index) const;
  std::vector<std::size_t> multi_index(std::size_t flat) const;

  bool is_zero() const;

  friend bool operator==(const Tensor& a, const Tensor& b) { return a.dims_ == b.dims_ && a.data_ == b.data_; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<Scalar> data_;
};

/// Unordered nontrivial split of the axes {0, ..., d−1}. Canonical form keeps
/// axis 0 in j1; both sides ascending.
struct AxisPartition {
  IndexSet j1;
  IndexSet j2;

  friend bool operator==(const AxisPartition&, const AxisPartition&) = default;
};

/// Validates and canonicalizes; DimensionError if not a nontrivial partition
/// of [0, d).
AxisPartition make_partition(IndexSet j1, std::size_t d);

/// All 2^{d−1} − 1 partitions, sorted by (|j1|, j1 lexicographic).
std::vector<AxisPartition> canonical_partitions(std::size_t d);

/// Parses "1|2,3" (1-based axes). Keeps the written orientation, so the
/// left side becomes the rows of a flattening.
AxisPartition parse_partition(const std::string& text, std::size_t d);
std::string to_string(const AxisPartition& p);  // 1-based, "1|2,3"

/// Rows run over the j1 axes and columns over the j2 axes, each row-major in
/// ascending axis order.
Matrix flatten(const Tensor& t, const AxisPartition& p);

bool is_reducible_wrt(const Tensor& t, const AxisPartition& p);

/// First partition in canonical order whose flattening has rank ≤ 1.
/// DomainError for d = 1. The zero tensor is reducible.
std::optional<AxisPartition> is_reducible(const Tensor& t);

Tensor subtensor(const Tensor& t, const std::vector<IndexSet>& sets);

/// (d−1)-tensor with entries Σ_i T(·, i)·x_i.
Tensor collapse(const Tensor& t, std::span<const Scalar> x);

Tensor tensor_product(const Tensor& a, const Tensor& b);

/// Factors of a tensor reducible w.r.t. p: T(i) = A(i_{j1})·B(i_{j2}).
/// DomainError if the flattening has rank > 1.
std::pair<Tensor, Tensor> factorize(const Tensor& t, const AxisPartition& p);

/// Inverse of factorize: C(i) = A(i_{j1})·B(i_{j2}).
Tensor outer_along(const Tensor& a, const Tensor& b, const AxisPartition& p);

/// Reducibility questions about subtensors of one fixed tensor, answered on
/// an integer image where possible.
class ReducibilityProbe {
 public:
  explicit ReducibilityProbe(Tensor t);

  const Tensor& tensor() const { return t_; }
  const std::vector<AxisPartition>& partitions() const { return parts_; }

  bool reducible_wrt(const std::vector<IndexSet>& sets, const AxisPartition& p) const;
  /// Index into partitions() of the first witnessing partition, or nullopt.
  std::optional<std::size_t> reducible(const std::vector<IndexSet>& sets) const;

  // Scratch buffers are reused between calls: use one probe per thread.

 private:
  struct Block {
    std::vector<std::size_t> shape;
    std::vector<std::int64_t> re;
    std::vector<std::int64_t> im;
    std::vector<std::size_t> flat;  // flat positions in the full tensor
  };
  struct Layout {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> pos;  // row·cols + col of every block cell
  };
  void gather(const std::vector<IndexSet>& sets) const;
  const std::vector<Layout>& layouts() const;
  bool block_reducible(std::size_t part) const;

  Tensor t_;
  std::optional<detail::IntegerImage> image_;
  std::vector<AxisPartition> parts_;
  mutable Block block_;
  mutable std::vector<std::size_t> layout_shape_;
  mutable std::vector<Layout> layouts_;
  mutable std::vector<std::size_t> idx_;
  mutable std::vector<std::int64_t> re_;
  mutable std::vector<std::int64_t> im_;
};

}  // namespace polylo
