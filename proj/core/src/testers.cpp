#include "polylo/testers.hpp"

#include <algorithm>

#include "polylo/combinatorics.hpp"
#include "polylo/errors.hpp"
#include "polylo/minor_oracle.hpp"
#include "polylo/random.hpp"
#include "polylo/stats.hpp"

namespace polylo {

namespace {

void check_config(const TesterConfig& c) {
  if (c.samples == 0) throw DomainError("tester: samples must be ≥ 1");
  if (c.epsilon <= 0 || c.epsilon > 1) throw DomainError("tester: epsilon must lie in (0, 1]");
}

Verdict decide(std::uint64_t bad, std::uint64_t samples, const mpq_class& threshold) {
  Verdict v;
  v.samples = samples;
  v.bad = bad;
  v.observed_bad_fraction = mpq_class(static_cast<unsigned long>(bad), static_cast<unsigned long>(samples));
  v.observed_bad_fraction.canonicalize();
  v.threshold = threshold;
  v.decision = v.observed_bad_fraction > threshold ? Decision::reject : Decision::accept;
  return v;
}

std::size_t standard_side(std::size_t d) { return std::size_t{1} << (d - 1); }

void check_tensor(const Tensor& t, std::size_t side) {
  if (t.order() < 2) throw DomainError("tensor tester: order must be ≥ 2");
  if (side == 0) throw DimensionError("tensor tester: side must be ≥ 1");
  for (auto n : t.dims()) {
    if (n < side) throw DimensionError("tensor tester: some axis is shorter than the probe side");
  }
}

}  // namespace

mpq_class tensor_delta(const mpq_class& eps, std::size_t d) {
  mpq_class x = eps / 2;
  for (std::size_t k = 1; k < d; ++k) x *= x;
  return x;
}

Verdict tensor_reducibility_tester(const Tensor& t, const TesterConfig& config) {
  check_config(config);
  const std::size_t d = t.order();
  if (d < 2) throw DomainError("tensor tester: order must be ≥ 2");
  const std::size_t side = config.side == 0 ? standard_side(d) : config.side;
  check_tensor(t, side);

  const ReducibilityProbe probe(t);
  Rng rng(config.seed, 0);
  std::vector<IndexSet> sets(d);
  std::uint64_t bad = 0;
  for (std::uint64_t s = 0; s < config.samples; ++s) {
    for (std::size_t a = 0; a < d; ++a) sets[a] = rng.subset(t.dims()[a], side);
    if (!probe.reducible(sets)) ++bad;
  }
  Verdict v = decide(bad, config.samples, config.delta.value_or(tensor_delta(config.epsilon, d)));
  v.side = side;
  v.nonstandard = side != standard_side(d) || config.delta.has_value();
  return v;
}

mpq_class exact_irreducible_fraction(const Tensor& t, std::size_t side, std::uint64_t cap) {
  check_tensor(t, side);
  const std::size_t d = t.order();
  std::uint64_t total = 1;
  for (auto n : t.dims()) {
    const std::uint64_t c = binomial(n, side);
    if (c != 0 && total > cap / c) throw CapExceeded("exact_irreducible_fraction: too many subtensors");
    total *= c;
  }
  if (total > cap) throw CapExceeded("exact_irreducible_fraction: too many subtensors");

  const ReducibilityProbe probe(t);
  std::vector<IndexSet> sets(d, first_combination(side));
  std::uint64_t bad = 0;
  for (;;) {
    if (!probe.reducible(sets)) ++bad;
    // Odometer over the per-axis combinations, last axis fastest.
    std::size_t a = d;
    while (a > 0) {
      --a;
      if (next_combination(sets[a], t.dims()[a])) break;
      sets[a] = first_combination(side);
      if (a == 0) {
        mpq_class f(static_cast<unsigned long>(bad), static_cast<unsigned long>(total));
        f.canonicalize();
        return f;
      }
    }
  }
}

Verdict matrix_rank_tester(const Matrix& a, std::size_t r, const TesterConfig& config) {
  check_config(config);
  if (r > std::min(a.rows(), a.cols())) throw DimensionError("matrix tester: r exceeds the matrix size");
  const MinorOracle oracle(a);
  Rng rng(config.seed, 0);
  std::uint64_t bad = 0;
  for (std::uint64_t s = 0; s < config.samples; ++s) {
    const IndexSet rows = rng.subset(a.rows(), r);
    const IndexSet cols = rng.subset(a.cols(), r);
    if (oracle.nonsingular(rows, cols)) ++bad;
  }
  Verdict v = decide(bad, config.samples, config.epsilon);
  v.side = r;
  return v;
}

TupleCountingReport tuple_counting_check(const SubsetDistribution& distribution, std::size_t n, std::size_t r,
                                         const mpq_class& delta, const mpq_class& p, std::uint64_t cap) {
  if (r < 1 || r > n) throw DomainError("tuple counting: need n ≥ r ≥ 1");
  if (delta < 0 || delta >= 1) throw DomainError("tuple counting: δ must lie in [0, 1)");
  if (p <= 0 || p > 1) throw DomainError("tuple counting: p must lie in (0, 1]");
  mpq_class sum = 0;
  for (const auto& [set, prob] : distribution) {
    if (prob < 0) throw DomainError("tuple counting: negative probability");
    if (!std::is_sorted(set.begin(), set.end()) || std::adjacent_find(set.begin(), set.end()) != set.end() ||
        (!set.empty() && set.back() >= n)) {
      throw DomainError("tuple counting: sets must be increasing subsets of [n]");
    }
    sum += prob;
  }
  if (sum != 1) throw DomainError("tuple counting: probabilities must sum to 1");

  TupleCountingReport rep;
  const mpq_class large_size = (1 - delta) * mpq_class(static_cast<unsigned long>(n));
  for (const auto& [set, prob] : distribution) {
    if (mpq_class(static_cast<unsigned long>(set.size())) >= large_size) rep.large_probability += prob;
  }
  if (rep.large_probability < p) throw DomainError("tuple counting: Pr[|I| ≥ (1−δ)n] is below p");

  rep.total_subsets = binomial(n, r);
  if (rep.total_subsets > cap) throw CapExceeded("tuple counting: too many r-subsets");
  const mpq_class half_p = p / 2;
  for_each_combination(n, r, [&](const IndexSet& s) {
    mpq_class contained = 0;
    for (const auto& [set, prob] : distribution) {
      if (std::includes(set.begin(), set.end(), s.begin(), s.end())) contained += prob;
    }
    if (contained < half_p) ++rep.bad_subsets;
    return true;
  });
  rep.bad_fraction = mpq_class(static_cast<unsigned long>(rep.bad_subsets),
                               static_cast<unsigned long>(rep.total_subsets));
  rep.bad_fraction.canonicalize();
  rep.bound = 2 * mpq_class(static_cast<unsigned long>(r)) * delta;
  rep.holds = rep.bad_fraction <= rep.bound;
  return rep;
}

}  // namespace polylo
