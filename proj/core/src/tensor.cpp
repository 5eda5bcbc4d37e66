#include "polylo/tensor.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "polylo/errors.hpp"

namespace polylo {

namespace {

std::size_t product(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

// Odometer over a shape, last axis fastest. Returns false after the last index.
bool advance(std::vector<std::size_t>& idx, const std::vector<std::size_t>& shape) {
  for (std::size_t a = shape.size(); a-- > 0;) {
    if (++idx[a] < shape[a]) return true;
    idx[a] = 0;
  }
  return false;
}

std::vector<std::size_t> pick(const std::vector<std::size_t>& v, const IndexSet& axes) {
  std::vector<std::size_t> out;
  out.reserve(axes.size());
  for (auto a : axes) out.push_back(v[a]);
  return out;
}

// Row/column position of every cell of `shape` in the flattening along p.
void flat_positions(const std::vector<std::size_t>& shape, const AxisPartition& p, std::vector<std::size_t>& row,
                    std::vector<std::size_t>& col, std::size_t& rows, std::size_t& cols) {
  rows = product(pick(shape, p.j1));
  cols = product(pick(shape, p.j2));
  const std::size_t n = product(shape);
  row.assign(n, 0);
  col.assign(n, 0);
  if (n == 0) return;
  std::vector<std::size_t> idx(shape.size(), 0);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = 0;
    for (auto a : p.j1) r = r * shape[a] + idx[a];
    std::size_t k = 0;
    for (auto a : p.j2) k = k * shape[a] + idx[a];
    row[c] = r;
    col[c] = k;
    advance(idx, shape);
  }
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw DimensionError("Tensor: order must be at least 1");
  data_.assign(product(dims_), Scalar());
}

Tensor::Tensor(std::vector<std::size_t> dims, std::vector<Scalar> entries)
    : dims_(std::move(dims)), data_(std::move(entries)) {
  if (dims_.empty()) throw DimensionError("Tensor: order must be at least 1");
  if (data_.size() != product(dims_)) {
    throw DimensionError("Tensor: expected " + std::to_string(product(dims_)) + " entries, got " +
                         std::to_string(data_.size()));
  }
}

Tensor Tensor::constant(std::vector<std::size_t> dims, const Scalar& value) {
  const std::size_t n = product(dims);
  return Tensor(std::move(dims), std::vector<Scalar>(n, value));
}

Tensor Tensor::from_matrix(const Matrix& m) {
  return Tensor({m.rows(), m.cols()}, std::vector<Scalar>(m.entries().begin(), m.entries().end()));
}

Tensor Tensor::from_vector(std::span<const Scalar> v) {
  return Tensor({v.size()}, std::vector<Scalar>(v.begin(), v.end()));
}

std::size_t Tensor::flat_index(std::span<const std::size_t> index) const {
  if (index.size() != dims_.size()) throw DimensionError("Tensor: index has wrong order");
  std::size_t f = 0;
  for (std::size_t a = 0; a < dims_.size(); ++a) {
    if (index[a] >= dims_[a]) throw DimensionError("Tensor: index out of range");
    f = f * dims_[a] + index[a];
  }
  return f;
}

std::vector<std::size_t> Tensor::multi_index(std::size_t flat) const {
  std::vector<std::size_t> idx(dims_.size());
  for (std::size_t a = dims_.size(); a-- > 0;) {
    idx[a] = flat % dims_[a];
    flat /= dims_[a];
  }
  return idx;
}

bool Tensor::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

AxisPartition make_partition(IndexSet j1, std::size_t d) {
  std::sort(j1.begin(), j1.end());
  if (std::adjacent_find(j1.begin(), j1.end()) != j1.end()) throw DimensionError("partition: repeated axis");
  if (!j1.empty() && j1.back() >= d) throw DimensionError("partition: axis out of range");
  IndexSet j2 = complement(j1, d);
  if (j1.empty() || j2.empty()) throw DimensionError("partition: both sides must be nonempty");
  if (j1.front() != 0) std::swap(j1, j2);
  return {std::move(j1), std::move(j2)};
}

std::vector<AxisPartition> canonical_partitions(std::size_t d) {
  std::vector<AxisPartition> out;
  if (d < 2) return out;
  // j1 = {0} ∪ S for every proper subset S of {1, ..., d−1}.
  const std::size_t rest = d - 1;
  for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << rest); ++mask) {
    IndexSet j1{0};
    for (std::size_t b = 0; b < rest; ++b) {
      if ((mask >> b) & 1U) j1.push_back(b + 1);
    }
    out.push_back(make_partition(std::move(j1), d));
  }
  std::sort(out.begin(), out.end(), [](const AxisPartition& a, const AxisPartition& b) {
    if (a.j1.size() != b.j1.size()) return a.j1.size() < b.j1.size();
    return a.j1 < b.j1;
  });
  return out;
}

AxisPartition parse_partition(const std::string& text, std::size_t d) {
  const auto bar = text.find('|');
  if (bar == std::string::npos) throw DimensionError("partition: expected 'a,b|c,...'");
  auto parse_side = [&](const std::string& side) {
    IndexSet out;
    std::stringstream ss(side);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(item, &pos);
      } catch (const std::exception&) {
        throw DimensionError("partition: bad axis '" + item + "'");
      }
      if (pos != item.size() || v == 0) throw DimensionError("partition: bad axis '" + item + "'");
      out.push_back(v - 1);
    }
    return out;
  };
  IndexSet j1 = parse_side(text.substr(0, bar));
  IndexSet j2 = parse_side(text.substr(bar + 1));
  AxisPartition p = make_partition(j1, d);
  std::sort(j1.begin(), j1.end());
  std::sort(j2.begin(), j2.end());
  if (j2 != complement(j1, d)) throw DimensionError("partition: sides do not cover the axes");
  return {std::move(j1), std::move(j2)};
}

std::string to_string(const AxisPartition& p) {
  std::string s;
  auto side = [&](const IndexSet& axes) {
    for (std::size_t k = 0; k < axes.size(); ++k) {
      if (k) s += ',';
      s += std::to_string(axes[k] + 1);
    }
  };
  side(p.j1);
  s += '|';
  side(p.j2);
  return s;
}

Matrix flatten(const Tensor& t, const AxisPartition& p) {
  const AxisPartition q = make_partition(p.j1, t.order());
  if (!((q.j1 == p.j1 && q.j2 == p.j2) || (q.j1 == p.j2 && q.j2 == p.j1))) {
    throw DimensionError("flatten: invalid partition");
  }
  std::vector<std::size_t> row;
  std::vector<std::size_t> col;
  std::size_t rows = 0;
  std::size_t cols = 0;
  flat_positions(t.dims(), p, row, col, rows, cols);
  Matrix m(rows, cols);
  for (std::size_t c = 0; c < t.size(); ++c) m(row[c], col[c]) = t[c];
  return m;
}

bool is_reducible_wrt(const Tensor& t, const AxisPartition& p) {
  const AxisPartition q = make_partition(p.j1, t.order());
  if (q.j1 != p.j1 && q.j1 != p.j2) throw DimensionError("is_reducible_wrt: invalid partition");
  std::vector<IndexSet> sets;
  for (auto d : t.dims()) sets.push_back(all_indices(d));
  return ReducibilityProbe(t).reducible_wrt(sets, q);
}

std::optional<AxisPartition> is_reducible(const Tensor& t) {
  if (t.order() < 2) throw DomainError("is_reducible: reducibility is undefined for d = 1");
  ReducibilityProbe probe(t);
  std::vector<IndexSet> sets;
  for (auto d : t.dims()) sets.push_back(all_indices(d));
  if (auto k = probe.reducible(sets)) return probe.partitions()[*k];
  return std::nullopt;
}

Tensor subtensor(const Tensor& t, const std::vector<IndexSet>& sets) {
  if (sets.size() != t.order()) throw DimensionError("subtensor: need one index set per axis");
  std::vector<std::size_t> shape;
  for (std::size_t a = 0; a < sets.size(); ++a) {
    for (auto i : sets[a]) {
      if (i >= t.dims()[a]) throw DimensionError("subtensor: index out of range");
    }
    shape.push_back(sets[a].size());
  }
  Tensor out(shape);
  if (out.size() == 0) return out;
  std::vector<std::size_t> idx(shape.size(), 0);
  std::vector<std::size_t> full(shape.size());
  std::size_t c = 0;
  do {
    for (std::size_t a = 0; a < shape.size(); ++a) full[a] = sets[a][idx[a]];
    out[c++] = t.at(full);
  } while (advance(idx, shape));
  return out;
}

Tensor collapse(const Tensor& t, std::span<const Scalar> x) {
  if (t.order() < 2) throw DimensionError("collapse: tensor order must be at least 2");
  const std::size_t last = t.dims().back();
  if (x.size() != last) throw DimensionError("collapse: vector length must equal the last side length");
  std::vector<std::size_t> dims(t.dims().begin(), t.dims().end() - 1);
  Tensor out(dims);
  for (std::size_t c = 0; c < out.size(); ++c) {
    Scalar acc;
    for (std::size_t i = 0; i < last; ++i) {
      if (!x[i].is_zero()) acc += t[c * last + i] * x[i];
    }
    out[c] = acc;
  }
  return out;
}

Tensor tensor_product(const Tensor& a, const Tensor& b) {
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  Tensor out(dims);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  }
  return out;
}

std::pair<Tensor, Tensor> factorize(const Tensor& t, const AxisPartition& p) {
  const Matrix m = flatten(t, p);
  if (!rank_at_most_one(m)) throw DomainError("factorize: tensor is not reducible w.r.t. this partition");
  Tensor a(pick(t.dims(), p.j1));
  Tensor b(pick(t.dims(), p.j2));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).is_zero()) continue;
      for (std::size_t r = 0; r < m.rows(); ++r) a[r] = m(r, j);
      const Scalar inv = Scalar(1) / m(i, j);
      for (std::size_t c = 0; c < m.cols(); ++c) b[c] = m(i, c) * inv;
      return {a, b};
    }
  }
  return {a, b};  // zero tensor: both factors zero
}

Tensor outer_along(const Tensor& a, const Tensor& b, const AxisPartition& p) {
  const std::size_t d = p.j1.size() + p.j2.size();
  std::vector<std::size_t> dims(d);
  if (a.order() != p.j1.size() || b.order() != p.j2.size()) throw DimensionError("outer_along: order mismatch");
  for (std::size_t k = 0; k < p.j1.size(); ++k) dims[p.j1[k]] = a.dims()[k];
  for (std::size_t k = 0; k < p.j2.size(); ++k) dims[p.j2[k]] = b.dims()[k];
  Tensor out(dims);
  std::vector<std::size_t> row;
  std::vector<std::size_t> col;
  std::size_t rows = 0;
  std::size_t cols = 0;
  flat_positions(dims, p, row, col, rows, cols);
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = a[row[c]] * b[col[c]];
  return out;
}

ReducibilityProbe::ReducibilityProbe(Tensor t) : t_(std::move(t)), parts_(canonical_partitions(t_.order())) {
  image_ = detail::integer_image(t_.entries());
}

void ReducibilityProbe::gather(const std::vector<IndexSet>& sets) const {
  if (sets.size() != t_.order()) throw DimensionError("ReducibilityProbe: need one index set per axis");
  Block& b = block_;
  b.shape.resize(sets.size());
  for (std::size_t a = 0; a < sets.size(); ++a) {
    for (auto i : sets[a]) {
      if (i >= t_.dims()[a]) throw DimensionError("ReducibilityProbe: index out of range");
    }
    b.shape[a] = sets[a].size();
  }
  const std::size_t n = product(b.shape);
  b.flat.clear();
  b.re.clear();
  b.im.clear();
  if (n == 0) return;
  idx_.assign(b.shape.size(), 0);
  do {
    std::size_t f = 0;
    for (std::size_t a = 0; a < sets.size(); ++a) f = f * t_.dims()[a] + sets[a][idx_[a]];
    b.flat.push_back(f);
  } while (advance(idx_, b.shape));
  if (image_) {
    for (auto f : b.flat) b.re.push_back(image_->re[f]);
    if (!image_->real()) {
      for (auto f : b.flat) b.im.push_back(image_->im[f]);
    }
  }
}

const std::vector<ReducibilityProbe::Layout>& ReducibilityProbe::layouts() const {
  if (layout_shape_ != block_.shape || layouts_.size() != parts_.size()) {
    layout_shape_ = block_.shape;
    layouts_.assign(parts_.size(), {});
    std::vector<std::size_t> row;
    std::vector<std::size_t> col;
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      Layout& l = layouts_[k];
      flat_positions(block_.shape, parts_[k], row, col, l.rows, l.cols);
      l.pos.resize(row.size());
      for (std::size_t c = 0; c < row.size(); ++c) l.pos[c] = row[c] * l.cols + col[c];
    }
  }
  return layouts_;
}

bool ReducibilityProbe::block_reducible(std::size_t part) const {
  const Block& b = block_;
  const Layout& l = layouts()[part];
  const std::size_t rows = l.rows;
  const std::size_t cols = l.cols;
  const std::size_t n = b.flat.size();
  if (!image_) {
    Matrix m(rows, cols);
    for (std::size_t c = 0; c < n; ++c) m(l.pos[c] / cols, l.pos[c] % cols) = t_[b.flat[c]];
    return rank_at_most_one(m);
  }
  // Place the block in flattened order, then test all 2×2 minors through a pivot.
  const bool complex = !b.im.empty();
  re_.assign(rows * cols, 0);
  im_.assign(complex ? rows * cols : 0, 0);
  for (std::size_t c = 0; c < n; ++c) {
    re_[l.pos[c]] = b.re[c];
    if (complex) im_[l.pos[c]] = b.im[c];
  }
  const auto& re = re_;
  const auto& im = im_;
  std::size_t pivot = rows * cols;
  for (std::size_t k = 0; k < rows * cols; ++k) {
    if (re[k] != 0 || (complex && im[k] != 0)) {
      pivot = k;
      break;
    }
  }
  if (pivot == rows * cols) return true;
  const std::size_t pi = pivot / cols;
  const std::size_t pj = pivot % cols;
  using I = detail::int128;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      // x·p == y·z with x = (i,j), p = pivot, y = (i,pj), z = (pi,j)
      const std::size_t x = i * cols + j;
      const std::size_t y = i * cols + pj;
      const std::size_t z = pi * cols + j;
      if (!complex) {
        if (I(re[x]) * re[pivot] != I(re[y]) * re[z]) return false;
      } else {
        const I lr = I(re[x]) * re[pivot] - I(im[x]) * im[pivot];
        const I li = I(re[x]) * im[pivot] + I(im[x]) * re[pivot];
        const I rr = I(re[y]) * re[z] - I(im[y]) * im[z];
        const I ri = I(re[y]) * im[z] + I(im[y]) * re[z];
        if (lr != rr || li != ri) return false;
      }
    }
  }
  return true;
}

bool ReducibilityProbe::reducible_wrt(const std::vector<IndexSet>& sets, const AxisPartition& p) const {
  const AxisPartition q = make_partition(p.j1, t_.order());
  const auto it = std::find(parts_.begin(), parts_.end(), q);
  if (it == parts_.end()) throw DimensionError("ReducibilityProbe: invalid partition");
  gather(sets);
  return block_reducible(static_cast<std::size_t>(it - parts_.begin()));
}

std::optional<std::size_t> ReducibilityProbe::reducible(const std::vector<IndexSet>& sets) const {
  gather(sets);
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (block_reducible(k)) return k;
  }
  return std::nullopt;
}

}  // namespace polylo
