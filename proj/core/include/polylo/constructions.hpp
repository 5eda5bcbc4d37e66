#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "polylo/matrix.hpp"
#include "polylo/polynomial.hpp"
#include "polylo/tensor.hpp"

namespace polylo {

/// The 2d disjoint blocks I_1 … I_{2d}: consecutive runs of the lowest
/// indices, each of size 2⌊n/(4d)⌋ unless `part_size` overrides it.
/// Variables past the last block are unused.
std::vector<IndexSet> counterexample_parts(std::size_t n, std::size_t d,
                                           std::optional<std::size_t> part_size = std::nullopt);

/// f = L_1⋯L_d − L_{d+1}⋯L_{2d} with L_j = Σ_{i∈I_j} x_i, fully expanded.
/// Requires n ≥ 4d unless part_size is given; DomainError otherwise.
PolynomialSpec make_counterexample(std::size_t n, std::size_t d,
                                   std::optional<std::size_t> part_size = std::nullopt);

/// Symmetric 0/1 matrix with a_ij = 1 iff j ≥ n−ℓ+i or i ≥ n−ℓ+j (1-based).
Matrix make_corner_matrix(std::size_t n, std::size_t ell);

/// Sum of r random rank-1 terms with factor entries in [−3, 3] \ {0} (u·uᵀ terms when
/// symmetric), then `corrupt_count` distinct overwrites with a different value.
/// In the symmetric case a corruption hits an unordered position {i, j} and is
/// mirrored, so off-diagonal corruptions change two entries.
Matrix make_random_low_rank(std::size_t n, std::size_t r, std::uint64_t seed, std::size_t corrupt_count,
                            bool symmetric);

/// u_1 ⊗ … ⊗ u_d with entries in [−3, 3] \ {0}, then `corrupt_count` distinct
/// cells overwritten with a different value in [−5, 5].
Tensor make_random_rank1_tensor(const std::vector<std::size_t>& dims, std::uint64_t seed,
                                std::size_t corrupt_count);

/// Replaces each entry by a factor×…×factor block of copies.
Tensor blow_up(const Tensor& t, std::size_t factor);

/// (x_1 + … + x_n)^d expanded; CapExceeded past `cap` terms.
PolynomialSpec make_power_sum(std::size_t n, unsigned d, std::uint64_t cap = 1'000'000);

}  // namespace polylo
