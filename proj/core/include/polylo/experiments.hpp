#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polylo/anticoncentration.hpp"
#include "polylo/stats.hpp"

namespace polylo {

/// Distribution of L_1⋯L_d − L_{d+1}⋯L_{2d} built from the distributions of
/// the independent part sums, without expanding the polynomial.
ValueDistribution counterexample_distribution(std::size_t n, std::size_t d, const RandomModel& model,
                                              std::optional<std::size_t> part_size = std::nullopt,
                                              std::uint64_t cap = kDefaultValueCap);

/// Pr[f = 0] against the product Pr[L_1 = 0]·Pr[L_{2d} = 0] that bounds it from below.
struct CounterexampleZeroBound {
  mpq_class p_zero;
  mpq_class p_first;
  mpq_class p_last;
  mpq_class product;
  bool holds = false;
};
CounterexampleZeroBound counterexample_zero_bound(std::size_t n, std::size_t d, const RandomModel& model,
                                                  std::optional<std::size_t> part_size = std::nullopt);

enum class ExperimentKind { counterexample, power_sum, random_quadratic };
enum class ExperimentMode { exact, monte_carlo, automatic };

ExperimentKind parse_experiment_kind(const std::string& name);  // InputError if unknown
ExperimentMode parse_experiment_mode(const std::string& name);
std::string to_string(ExperimentKind kind);
std::string to_string(ExperimentMode mode);

struct ScalingOptions {
  ExperimentKind kind = ExperimentKind::counterexample;
  std::vector<std::size_t> n_list;
  unsigned d = 2;
  std::size_t rank = 2;  // random_quadratic only
  std::string model = "rademacher";
  Scalar shift;  // shifted model only
  ExperimentMode mode = ExperimentMode::automatic;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
  std::uint64_t cap = kDefaultOutcomeCap;
  std::optional<std::size_t> part_size;  // counterexample only
  Scalar z;                              // Monte Carlo target
  double level = 0.99;
  unsigned threads = 1;
};

struct ScalingRow {
  std::size_t n = 0;
  bool exact = true;
  Scalar z;                         // argmax in exact mode
  std::optional<mpq_class> rho;     // exact max point probability
  std::optional<mpq_class> p_zero;  // exact Pr[f = 0]
  double estimate = 0.0;            // rho, or the Monte Carlo frequency of z
  std::optional<Interval> ci;
  double n_rho = 0.0;
  double sqrt_n_rho = 0.0;
  double wall_time = 0.0;
};

/// One row per n, in the order given. DomainError on unusable parameters.
std::vector<ScalingRow> run_experiment_scaling(const ScalingOptions& options);

struct RocOptions {
  std::vector<std::size_t> dims{6, 6, 6};
  std::size_t corrupt_count = 20;
  mpq_class epsilon{1, 4};
  std::vector<std::uint64_t> samples_list{50, 100, 200, 400};
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  std::uint64_t cap = 1'000'000;  // exact irreducible fraction skipped beyond this
};

struct RocRow {
  std::uint64_t samples = 0;
  std::uint64_t trials = 0;
  std::uint64_t clean_rejects = 0;
  std::uint64_t corrupt_rejects = 0;
  mpq_class delta;
  std::optional<double> mean_exact_fraction;  // over the corrupted inputs
  double wall_time = 0.0;
};

/// Rejection counts for clean rank-1 tensors and corrupted ones, per sample size.
/// Trial t uses the same clean/corrupted pair for every sample size.
std::vector<RocRow> run_tester_roc(const RocOptions& options);

void write_scaling_csv(std::ostream& out, const ScalingOptions& options, const std::vector<ScalingRow>& rows,
                       bool timing);
void write_roc_csv(std::ostream& out, const RocOptions& options, const std::vector<RocRow>& rows, bool timing);

}  // namespace polylo
