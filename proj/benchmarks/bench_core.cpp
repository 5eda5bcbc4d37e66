#include <benchmark/benchmark.h>

#include <polylo/anticoncentration.hpp>
#include <polylo/constructions.hpp>
#include <polylo/experiments.hpp>
#include <polylo/gap.hpp>
#include <polylo/matrix.hpp>
#include <polylo/repair.hpp>
#include <polylo/submatrix.hpp>
#include <polylo/tensor.hpp>
#include <polylo/testers.hpp>

using namespace polylo;

static void BM_Rank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = make_random_low_rank(n, n / 2, 1, n, false);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rank)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

static void BM_Det(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = make_random_low_rank(n, n, 2, 0, false);
  for (auto _ : state) benchmark::DoNotOptimize(det(m));
}
BENCHMARK(BM_Det)->Arg(8)->Arg(16)->Arg(32);

static void BM_SingularFractionExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = make_random_low_rank(n, 2, 3, n, true);
  for (auto _ : state) benchmark::DoNotOptimize(singular_fraction(m, 3).nonsingular);
}
BENCHMARK(BM_SingularFractionExact)->Arg(8)->Arg(12)->Arg(16);

static void BM_TensorReducible(benchmark::State& state) {
  const Tensor t = make_random_rank1_tensor({6, 6, 6}, 4, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(is_reducible(t));
}
BENCHMARK(BM_TensorReducible)->Arg(0)->Arg(2);

static void BM_TensorTester(benchmark::State& state) {
  const Tensor t = make_random_rank1_tensor({6, 6, 6}, 5, 2);
  TesterConfig c;
  c.samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tensor_reducibility_tester(t, c).bad);
    ++c.seed;
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TensorTester)->Arg(100)->Arg(1000);

static void BM_ExactIrreducibleFraction(benchmark::State& state) {
  const Tensor t = make_random_rank1_tensor({6, 6, 6}, 6, 2);
  for (auto _ : state) benchmark::DoNotOptimize(exact_irreducible_fraction(t, 4));
}
BENCHMARK(BM_ExactIrreducibleFraction)->Unit(benchmark::kMillisecond);

static void BM_SymmetricRepair(benchmark::State& state) {
  const Matrix m = make_random_low_rank(8, 1, 7, 3, true);
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_low_rank_repair(m, 2).changed_entries);
}
BENCHMARK(BM_SymmetricRepair)->Unit(benchmark::kMillisecond);

static void BM_TensorRepair(benchmark::State& state) {
  const Tensor t = make_random_rank1_tensor({6, 6, 6}, 8, 2);
  for (auto _ : state) benchmark::DoNotOptimize(tensor_repair(t, mpq_class(1, 4), 1).has_value());
}
BENCHMARK(BM_TensorRepair)->Unit(benchmark::kMillisecond);

static void BM_ExactDistributionCounterexample(benchmark::State& state) {
  const auto f = make_counterexample(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(max_point_probability(f, RandomModel::rademacher()).probability);
}
BENCHMARK(BM_ExactDistributionCounterexample)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_CounterexampleProductDP(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(counterexample_distribution(n, 2, RandomModel::rademacher()).size());
}
BENCHMARK(BM_CounterexampleProductDP)->Arg(16)->Arg(64)->Arg(128);

static void BM_LinearDistribution(benchmark::State& state) {
  const std::vector<Scalar> ones(static_cast<std::size_t>(state.range(0)), Scalar(1));
  for (auto _ : state) benchmark::DoNotOptimize(linear_distribution(ones, RandomModel::lazy()).size());
}
BENCHMARK(BM_LinearDistribution)->Arg(20)->Arg(100);

static void BM_MonteCarlo(benchmark::State& state) {
  const auto f = make_counterexample(24, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(monte_carlo_point_probability(f, Scalar(), RandomModel::rademacher(), 10'000, 1).hits);
  }
  state.SetItemsProcessed(state.iterations() * 10'000);
}
BENCHMARK(BM_MonteCarlo)->Unit(benchmark::kMillisecond);

static void BM_MinimalCover(benchmark::State& state) {
  CoverQuery q;
  for (long v : {3, 7, 10, 14, 17, 20}) q.values.push_back({Scalar(v)});
  q.max_rank = static_cast<std::size_t>(state.range(0));
  q.generator_bound = 3;
  for (auto _ : state) benchmark::DoNotOptimize(minimal_cover(q).has_value());
}
BENCHMARK(BM_MinimalCover)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_CountZV(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(count_Z_V(3, 4, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_CountZV)->Arg(100)->Arg(10000);

BENCHMARK_MAIN();
