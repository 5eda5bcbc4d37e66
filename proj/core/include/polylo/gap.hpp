#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "polylo/scalar.hpp"

namespace polylo {

using Vec = std::vector<Scalar>;

/// Image of the box ∏[−Nᵢ, Nᵢ] under a ↦ Σ aᵢvᵢ. Stored as the map, not the set.
struct SymmetricGAP {
  std::vector<Vec> generators;
  std::vector<std::uint64_t> bounds;

  std::size_t rank() const { return generators.size(); }
  friend bool operator==(const SymmetricGAP&, const SymmetricGAP&) = default;
};

/// ∏(2Nᵢ + 1).
mpz_class gap_volume(const SymmetricGAP& g);

/// Bounded enumeration of the coefficient box. CapExceeded if the volume
/// exceeds the cap; DimensionError on mismatched ambient dimensions.
bool gap_contains(const SymmetricGAP& g, const Vec& u, std::uint64_t cap = 10'000'000);

struct CoverQuery {
  std::vector<Vec> values;
  std::size_t max_rank = 1;
  std::size_t outliers_allowed = 0;
  std::uint64_t generator_bound = 4;  // candidate generators w/q with 1 ≤ q ≤ this
  std::uint64_t volume_cap = 1000;
};

struct CoverResult {
  SymmetricGAP gap;
  std::vector<std::size_t> covered;   // indices into the query values
  std::vector<std::size_t> outliers;
  mpz_class volume;
  bool upper_bound = true;  // minimum over the bounded search space only
};

/// Candidate generators: w/q for w a nonzero value or pairwise difference and
/// 1 ≤ q ≤ generator_bound, sign-normalized and sorted.
std::vector<Vec> cover_candidates(const CoverQuery& query);

/// Minimum-volume GAP of rank ≤ max_rank (≤ 2) in the search space covering
/// all but outliers_allowed values. Ties prefer lower rank, then the
/// lexicographically smaller generators. nullopt if nothing fits under the
/// volume cap. DomainError if max_rank > 2 or the candidate space is empty
/// when a nonzero rank is needed.
std::optional<CoverResult> minimal_cover(const CoverQuery& query);

/// |𝒵(V)|: integer r×m matrices whose row maxima Nᵢ satisfy ∏(2Nᵢ+1) ≤ V,
/// counted by the exact row maxima.
mpz_class count_Z_V(std::size_t r, std::size_t m, std::uint64_t v);

/// The same set built as the union of the boxes 𝒵(N₁,…,N_r), deduplicated.
/// CapExceeded past `cap` enumerated matrices.
std::uint64_t enumerate_Z_V(std::size_t r, std::size_t m, std::uint64_t v, std::uint64_t cap = 10'000'000);

}  // namespace polylo
