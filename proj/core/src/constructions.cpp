#include "polylo/constructions.hpp"

#include <algorithm>

#include "polylo/errors.hpp"
#include "polylo/random.hpp"
#include "polylo/stats.hpp"

namespace polylo {

std::vector<IndexSet> counterexample_parts(std::size_t n, std::size_t d, std::optional<std::size_t> part_size) {
  if (d == 0) throw DomainError("counterexample: d must be positive");
  std::size_t s = 0;
  if (part_size) {
    s = *part_size;
    if (s == 0 || 2 * d * s > n) throw DomainError("counterexample: 2d parts of this size do not fit in n");
  } else {
    if (n < 4 * d) throw DomainError("counterexample: needs n ≥ 4d");
    s = 2 * (n / (4 * d));
  }
  std::vector<IndexSet> parts(2 * d);
  for (std::size_t j = 0; j < 2 * d; ++j) {
    for (std::size_t t = 0; t < s; ++t) parts[j].push_back(j * s + t);
  }
  return parts;
}

PolynomialSpec make_counterexample(std::size_t n, std::size_t d, std::optional<std::size_t> part_size) {
  const auto parts = counterexample_parts(n, d, part_size);
  auto linear = [&](const IndexSet& part) {
    PolynomialSpec l(n);
    for (auto i : part) l.add_term({{i, 1}}, 1);
    return l;
  };
  PolynomialSpec left = PolynomialSpec::constant(n, 1);
  PolynomialSpec right = PolynomialSpec::constant(n, 1);
  for (std::size_t j = 0; j < d; ++j) {
    left = left * linear(parts[j]);
    right = right * linear(parts[d + j]);
  }
  return left - right;
}

Matrix make_corner_matrix(std::size_t n, std::size_t ell) {
  if (ell > n) throw DomainError("corner matrix: needs ell ≤ n");
  Matrix m(n, n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (j + ell >= n + i || i + ell >= n + j) m(i - 1, j - 1) = 1;
    }
  }
  return m;
}

namespace {

long fresh_value(Rng& rng, const Scalar& current, long lo, long hi) {
  for (;;) {
    const long v = rng.between(lo, hi);
    if (Scalar(v) != current) return v;
  }
}

long nonzero_between(Rng& rng, long bound) {
  for (;;) {
    const long v = rng.between(-bound, bound);
    if (v != 0) return v;
  }
}

}  // namespace

Matrix make_random_low_rank(std::size_t n, std::size_t r, std::uint64_t seed, std::size_t corrupt_count,
                            bool symmetric) {
  if (r > n) throw DimensionError("make_random_low_rank: r exceeds n");
  Rng rng(seed);
  Matrix m(n, n);
  for (std::size_t t = 0; t < r; ++t) {
    std::vector<long> u(n);
    std::vector<long> v(n);
    for (auto& x : u) x = nonzero_between(rng, 3);
    if (symmetric) {
      v = u;
    } else {
      for (auto& x : v) x = nonzero_between(rng, 3);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) += Scalar(u[i] * v[j]);
    }
  }
  if (symmetric) {
    const std::size_t slots = n * (n + 1) / 2;
    if (corrupt_count > slots) throw DimensionError("make_random_low_rank: too many corruptions");
    for (auto s : rng.subset(slots, corrupt_count)) {
      // Unordered position s ↦ (i, j) with i ≤ j, row by row.
      std::size_t i = 0;
      while (s >= n - i) {
        s -= n - i;
        ++i;
      }
      const std::size_t j = i + s;
      const long v = fresh_value(rng, m(i, j), -5, 5);
      m(i, j) = v;
      m(j, i) = v;
    }
  } else {
    if (corrupt_count > n * n) throw DimensionError("make_random_low_rank: too many corruptions");
    for (auto s : rng.subset(n * n, corrupt_count)) {
      m(s / n, s % n) = fresh_value(rng, m(s / n, s % n), -5, 5);
    }
  }
  return m;
}

Tensor make_random_rank1_tensor(const std::vector<std::size_t>& dims, std::uint64_t seed, std::size_t corrupt_count) {
  Rng rng(seed);
  Tensor t = Tensor::constant({1}, 1);
  bool first = true;
  for (auto n : dims) {
    std::vector<Scalar> u(n);
    for (auto& x : u) x = nonzero_between(rng, 3);
    const Tensor f = Tensor::from_vector(u);
    t = first ? f : tensor_product(t, f);
    first = false;
  }
  if (corrupt_count > t.size()) throw DimensionError("make_random_rank1_tensor: too many corruptions");
  for (auto c : rng.subset(t.size(), corrupt_count)) t[c] = fresh_value(rng, t[c], -5, 5);
  return t;
}

Tensor blow_up(const Tensor& t, std::size_t factor) {
  std::vector<std::size_t> dims = t.dims();
  for (auto& n : dims) n *= factor;
  Tensor out(dims);
  for (std::size_t c = 0; c < out.size(); ++c) {
    auto idx = out.multi_index(c);
    for (auto& i : idx) i /= factor;
    out[c] = t.at(idx);
  }
  return out;
}

PolynomialSpec make_power_sum(std::size_t n, unsigned d, std::uint64_t cap) {
  if (binomial(n + d - 1, d) > cap) throw CapExceeded("make_power_sum: expansion exceeds the term cap");
  std::vector<Scalar> ones(n, Scalar(1));
  const PolynomialSpec l = PolynomialSpec::linear(ones);
  PolynomialSpec f = PolynomialSpec::constant(n, 1);
  for (unsigned k = 0; k < d; ++k) f = f * l;
  return f;
}

}  // namespace polylo
