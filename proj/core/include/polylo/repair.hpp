#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "polylo/matrix.hpp"
#include "polylo/tensor.hpp"

namespace polylo {

/// What a repair stage chose, for diagnostics. Unused fields stay empty.
struct RepairWitness {
  std::string stage;
  std::optional<mpq_class> alpha;  // nonsingular r×r fraction of the input
  bool alpha_exact = true;
  std::optional<std::size_t> k;
  IndexSet rows;  // (I, J) of low_rank_approx, or the robust set I
  IndexSet cols;
  std::optional<std::uint64_t> extensions;  // nonsingular extensions of A[I,J]
  bool exhaustive = true;                   // false: first pair under the bound, not the minimum
  bool transposed = false;
  IndexSet basis;  // V of the symmetrization step
  std::optional<std::uint64_t> asymmetric_entries;
  std::optional<mpq_class> change_bound;  // bound on changed entries proved for this stage
  std::vector<std::size_t> anchor;
  std::optional<AxisPartition> partition;
  std::optional<mpq_class> anchored_fraction;    // stage-2 irreducible fraction at the anchor
  std::optional<mpq_class> partition_fraction;   // stage-3 fraction not reducible w.r.t. partition
  std::optional<bool> anchor_threshold_met;
  std::vector<std::string> notes;
};

template <class T>
struct RepairOutcome {
  T output;
  std::uint64_t changed_entries = 0;
  mpq_class changed_fraction = 0;
  std::vector<RepairWitness> witness;
};

using MatrixRepair = RepairOutcome<Matrix>;
using TensorRepair = RepairOutcome<Tensor>;

struct RepairOptions {
  std::uint64_t cap = 10'000'000;  // exact enumeration budget per stage
  std::uint64_t samples = 20'000;  // used only when a fraction exceeds the cap
  std::uint64_t seed = 0;
};

/// Rank < r approximation B with ‖A − B‖₀ ≤ α^{1/r}·n·m, α the nonsingular
/// r×r fraction of A.
MatrixRepair low_rank_approx(const Matrix& a, std::size_t r, const RepairOptions& options = {});

struct RobustSubmatrix {
  std::size_t k = 0;
  IndexSet indices;
};

/// Minimal k ≤ q such that rank(A[I,I]) ≤ k for some I missing at most
/// (q−k)·γn indices. The budget is passed as (γn)² so that irrational γ = q√ρ
/// stays exact. Removal sets are searched by increasing size, lexicographically.
RobustSubmatrix robust_principal_submatrix_budget(const Matrix& a, std::size_t q, const mpq_class& gamma_n_squared,
                                                  std::uint64_t cap = 10'000'000);
RobustSubmatrix robust_principal_submatrix(const Matrix& a, std::size_t q, const mpq_class& gamma);

/// Checks rank(A[I′,I′]) = k for every I′ ⊆ I with |I| − |I′| ≤ √budget.
bool verify_robust_rank(const Matrix& a, const IndexSet& indices, std::size_t k, const mpq_class& gamma_n_squared);

/// Symmetric B = A[V,:]ᵀ A[V,V]⁻¹ A[V,:] with the row space of A.
/// ConstructionError if the greedy choice of V fails.
Matrix symmetrize_robust(const Matrix& a, std::size_t r, RepairWitness* witness = nullptr);

/// Symmetric B of rank ≤ q close to A. DomainError if rank(A) > q.
MatrixRepair fix_symmetry(const Matrix& a, std::size_t q, const RepairOptions& options = {});

/// low_rank_approx(A, r) followed by fix_symmetry(·, r−1).
MatrixRepair symmetric_low_rank_repair(const Matrix& a, std::size_t r, const RepairOptions& options = {});

struct TensorRepairOptions {
  std::uint64_t cap = 10'000'000;         // side-2^{d−1} subtensors enumerated exactly up to this
  std::uint64_t samples_per_anchor = 400;  // otherwise sampled per anchor
  std::uint64_t anchored_cap = 1'000'000;  // 2×…×2 anchored subtensors per (anchor, partition)
};

/// Tensor made reducible by the three-stage construction, or nullopt when no
/// anchor and partition pass the stage-3 test. `diagnostics` receives the
/// per-stage record either way.
std::optional<TensorRepair> tensor_repair(const Tensor& t, const mpq_class& eps, std::uint64_t seed,
                                          const TensorRepairOptions& options = {},
                                          std::vector<RepairWitness>* diagnostics = nullptr);

}  // namespace polylo
