#include "polylo/detail/integer_image.hpp"
#include "polylo/submatrix.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "polylo/combinatorics.hpp"
#include "polylo/errors.hpp"
#include "polylo/random.hpp"

namespace polylo {

mpq_class SubmatrixStats::nonsingular_fraction() const {
  if (total == 0) return 0;
  mpq_class f(mpz_class(static_cast<unsigned long>(nonsingular)), mpz_class(static_cast<unsigned long>(total)));
  f.canonicalize();
  return f;
}

std::uint64_t submatrix_count(std::size_t rows, std::size_t cols, std::size_t r) {
  const auto a = binomial(rows, r);
  const auto b = binomial(cols, r);
  detail::uint128 p = static_cast<detail::uint128>(a) * b;
  return p > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(p);
}

namespace {

void check_side(const Matrix& m, std::size_t r) {
  if (r > m.rows() || r > m.cols()) throw DimensionError("singular_fraction: r exceeds matrix size");
}

}  // namespace

mpq_class nonsingular_fraction_exact(const MinorOracle& oracle, std::size_t r, std::uint64_t cap) {
  FractionOptions opt;
  opt.cap = cap;
  return singular_fraction(oracle, r, opt).nonsingular_fraction();
}

SubmatrixStats singular_fraction(const MinorOracle& oracle, std::size_t r, const FractionOptions& options) {
  const Matrix& m = oracle.matrix();
  check_side(m, r);
  SubmatrixStats st;
  st.r = r;
  st.mode = options.mode;
  if (options.mode == CountMode::exact) {
    st.total = submatrix_count(m.rows(), m.cols(), r);
    if (st.total > options.cap) {
      throw CapExceeded("singular_fraction: " + std::to_string(st.total) +
                        " submatrices exceed the exact cap; use sampled mode");
    }
    for_each_combination(m.rows(), r, [&](const IndexSet& rows) {
      for_each_combination(m.cols(), r, [&](const IndexSet& cols) {
        if (oracle.nonsingular(rows, cols)) ++st.nonsingular;
        return true;
      });
      return true;
    });
    const double f = st.total == 0 ? 0.0 : static_cast<double>(st.nonsingular) / static_cast<double>(st.total);
    st.interval = {f, f};
    return st;
  }
  if (options.samples == 0) throw DomainError("singular_fraction: samples must be positive");
  Rng rng(options.seed);
  st.samples = options.samples;
  st.seed = options.seed;
  st.total = options.samples;
  for (std::uint64_t s = 0; s < options.samples; ++s) {
    auto rows = rng.subset(m.rows(), r);
    auto cols = rng.subset(m.cols(), r);
    if (oracle.nonsingular(rows, cols)) ++st.nonsingular;
  }
  st.interval = wilson_interval(st.nonsingular, st.total, options.level);
  return st;
}

SubmatrixStats singular_fraction(const Matrix& m, std::size_t r, const FractionOptions& options) {
  return singular_fraction(MinorOracle(m), r, options);
}

std::size_t count_disjoint_nonsingular(const Matrix& m, std::size_t d) {
  if (m.rows() != d) throw DimensionError("count_disjoint_nonsingular: matrix must have exactly d rows");
  const MinorOracle oracle(m);
  const IndexSet rows = all_indices(d);
  std::vector<bool> used(m.cols(), false);
  std::size_t found = 0;
  for_each_combination(m.cols(), d, [&](const IndexSet& cols) {
    for (auto j : cols) {
      if (used[j]) return true;
    }
    if (oracle.nonsingular(rows, cols)) {
      for (auto j : cols) used[j] = true;
      ++found;
    }
    return true;
  });
  return found;
}

BalancedPartitionResult balanced_partition(const Matrix& m, std::size_t q, std::size_t r, const mpq_class& eps,
                                           std::uint64_t seed, std::size_t max_tries,
                                           const FractionOptions& options) {
  if (!m.is_square()) throw DimensionError("balanced_partition: matrix must be square");
  const std::size_t n = m.rows();
  if (q == 0 || n % q != 0) throw DimensionError("balanced_partition: q must divide n");
  const std::size_t part = n / q;
  if (r == 0 || r > part) throw DimensionError("balanced_partition: r must be in [1, n/q]");

  BalancedPartitionResult result;
  const MinorOracle oracle(m);
  if (submatrix_count(n, n, r) <= options.cap) {
    if (nonsingular_fraction_exact(oracle, r, options.cap) < eps) {
      result.precondition_met = false;
      return result;
    }
  }

  const mpq_class half = eps / 2;
  const double half_d = half.get_d();
  const bool exact_blocks = submatrix_count(part, part, r) <= options.cap;
  Rng rng(seed);
  IndexSet perm = all_indices(n);
  for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
    ++result.tries;
    rng.shuffle(std::span<std::size_t>(perm));
    std::vector<IndexSet> parts(q);
    for (std::size_t a = 0; a < q; ++a) {
      parts[a].assign(perm.begin() + static_cast<std::ptrdiff_t>(a * part),
                      perm.begin() + static_cast<std::ptrdiff_t>((a + 1) * part));
      std::sort(parts[a].begin(), parts[a].end());
    }
    result.block_fractions.clear();
    bool ok = true;
    for (std::size_t a = 0; a < q; ++a) {
      for (std::size_t b = 0; b < q; ++b) {
        const MinorOracle block(submatrix(m, parts[a], parts[b]));
        if (exact_blocks) {
          mpq_class f = nonsingular_fraction_exact(block, r, options.cap);
          if (!(f > half)) ok = false;
          result.block_fractions.push_back(f);
        } else {
          FractionOptions so = options;
          so.mode = CountMode::sampled;
          so.seed = rng.next();
          auto st = singular_fraction(block, r, so);
          if (!(st.interval.low > half_d)) ok = false;
          result.block_fractions.push_back(st.nonsingular_fraction());
        }
      }
    }
    if (ok) {
      result.parts = std::move(parts);
      return result;
    }
  }
  return result;
}

}  // namespace polylo
