#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "polylo/matrix.hpp"
#include "polylo/minor_oracle.hpp"
#include "polylo/stats.hpp"

namespace polylo {

enum class CountMode { exact, sampled };

inline constexpr std::uint64_t kDefaultSubmatrixCap = 10'000'000;

struct FractionOptions {
  CountMode mode = CountMode::exact;
  std::uint64_t cap = kDefaultSubmatrixCap;  // exact mode: max C(rows,r)·C(cols,r)
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  double level = 0.99;  // Wilson interval level reported in sampled mode
};

/// Counts of nonsingular r×r submatrices.
struct SubmatrixStats {
  std::size_t r = 0;
  std::uint64_t total = 0;
  std::uint64_t nonsingular = 0;
  CountMode mode = CountMode::exact;
  std::uint64_t samples = 0;  // sampled mode only
  std::uint64_t seed = 0;
  Interval interval;  // for the nonsingular fraction; a point in exact mode

  mpq_class nonsingular_fraction() const;
  mpq_class singular_fraction() const { return 1 - nonsingular_fraction(); }
};

/// Number of r×r submatrices, saturating.
std::uint64_t submatrix_count(std::size_t rows, std::size_t cols, std::size_t r);

/// Exact mode throws CapExceeded past options.cap; sampled mode draws
/// (row set, column set) pairs uniformly with replacement.
SubmatrixStats singular_fraction(const MinorOracle& oracle, std::size_t r, const FractionOptions& options = {});
SubmatrixStats singular_fraction(const Matrix& m, std::size_t r, const FractionOptions& options = {});

/// Exact nonsingular fraction; CapExceeded past the cap.
mpq_class nonsingular_fraction_exact(const MinorOracle& oracle, std::size_t r,
                                     std::uint64_t cap = kDefaultSubmatrixCap);

/// Size of a maximal family of pairwise column-disjoint nonsingular d×d
/// submatrices of a d-row matrix, built greedily over column d-tuples in
/// lexicographic order.
std::size_t count_disjoint_nonsingular(const Matrix& m, std::size_t d);

struct BalancedPartitionResult {
  std::optional<std::vector<IndexSet>> parts;
  // Nonsingular r×r fraction of every block M[I_a, I_b] (a-major) from the
  // last partition tried.
  std::vector<mpq_class> block_fractions;
  std::size_t tries = 0;
  bool precondition_met = true;  // false when the exact whole-matrix fraction is below ε
};

/// Random equal-size partitions into q parts until every block has a
/// nonsingular fraction strictly above ε/2. Blocks under the cap are counted
/// exactly. Larger blocks are sampled, and a block passes only when the lower
/// end of its Wilson interval is above ε/2.
BalancedPartitionResult balanced_partition(const Matrix& m, std::size_t q, std::size_t r, const mpq_class& eps,
                                           std::uint64_t seed, std::size_t max_tries,
                                           const FractionOptions& options = {});

}  // namespace polylo
