#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "polylo/matrix.hpp"
#include "polylo/tensor.hpp"

namespace polylo {

struct TesterConfig {
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  mpq_class epsilon{1, 4};
  std::size_t side = 0;                  // 0: the standard 2^{d−1}
  std::optional<mpq_class> delta;        // overrides (ε/2)^{2^{d−1}}
};

enum class Decision { accept, reject };

struct Verdict {
  Decision decision = Decision::accept;
  mpq_class observed_bad_fraction = 0;
  mpq_class threshold = 0;
  std::uint64_t samples = 0;
  std::uint64_t bad = 0;
  std::size_t side = 0;
  bool nonstandard = false;  // side or δ overridden
};

/// (ε/2)^{2^{d−1}}.
mpq_class tensor_delta(const mpq_class& eps, std::size_t d);

/// Samples side^d subtensors with replacement and rejects iff the irreducible
/// fraction exceeds δ. DimensionError if some axis is shorter than the side.
Verdict tensor_reducibility_tester(const Tensor& t, const TesterConfig& config);

/// Irreducible fraction over all side^d subtensors, by enumeration.
mpq_class exact_irreducible_fraction(const Tensor& t, std::size_t side, std::uint64_t cap = 10'000'000);

/// Samples r×r submatrices with replacement and rejects iff the nonsingular
/// fraction exceeds ε.
Verdict matrix_rank_tester(const Matrix& a, std::size_t r, const TesterConfig& config);

using SubsetDistribution = std::vector<std::pair<IndexSet, mpq_class>>;

struct TupleCountingReport {
  bool holds = false;
  std::uint64_t bad_subsets = 0;  // r-sets S with Pr[S ⊆ I] < p/2
  std::uint64_t total_subsets = 0;
  mpq_class bad_fraction = 0;
  mpq_class bound = 0;       // 2rδ
  mpq_class large_probability = 0;  // Pr[|I| ≥ (1−δ)n]
};

/// Exhaustive check of the tuple-counting bound for an explicit distribution
/// of random subsets of [n]. DomainError if the distribution is malformed or
/// Pr[|I| ≥ (1−δ)n] < p.
TupleCountingReport tuple_counting_check(const SubsetDistribution& distribution, std::size_t n, std::size_t r,
                                         const mpq_class& delta, const mpq_class& p,
                                         std::uint64_t cap = 10'000'000);

}  // namespace polylo
