#include <gtest/gtest.h>

#include <cmath>

#include <polylo/combinatorics.hpp>
#include <polylo/constructions.hpp>
#include <polylo/errors.hpp>
#include <polylo/random.hpp>
#include <polylo/stats.hpp>
#include <polylo/submatrix.hpp>
#include <polylo/testers.hpp>

#include "instances.hpp"

using namespace polylo;

namespace {

Tensor two_slice_example() {
  Tensor t({2, 2, 2});
  t.at(std::vector<std::size_t>{0, 0, 0}) = 1;
  t.at(std::vector<std::size_t>{1, 1, 0}) = 1;
  t.at(std::vector<std::size_t>{0, 1, 1}) = 1;
  return t;
}

Matrix rank_one_corrupted() {
  Matrix m(4, 4);
  const long u[] = {1, 2, -1, 3};
  const long v[] = {2, 1, 1, -2};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = Scalar(u[i] * v[j]);
  }
  m(1, 2) = 7;
  return m;
}

// Independent oracle: enumerate subtensors and test with flatten/rank.
mpq_class oracle_irreducible_fraction(const Tensor& t, std::size_t side) {
  const std::size_t d = t.order();
  std::vector<std::vector<IndexSet>> per_axis(d);
  for (std::size_t a = 0; a < d; ++a) {
    for_each_combination(t.dims()[a], side, [&](const IndexSet& c) {
      per_axis[a].push_back(c);
      return true;
    });
  }
  std::uint64_t total = 0;
  std::uint64_t bad = 0;
  std::vector<std::size_t> pos(d, 0);
  for (;;) {
    std::vector<IndexSet> sets(d);
    for (std::size_t a = 0; a < d; ++a) sets[a] = per_axis[a][pos[a]];
    ++total;
    bad += !is_reducible(subtensor(t, sets)).has_value();
    std::size_t a = 0;
    while (a < d && ++pos[a] == per_axis[a].size()) pos[a++] = 0;
    if (a == d) break;
  }
  mpq_class f(static_cast<unsigned long>(bad), static_cast<unsigned long>(total));
  f.canonicalize();
  return f;
}

}  // namespace

TEST(TensorDelta, Values) {
  EXPECT_EQ(tensor_delta(mpq_class(1, 4), 2), mpq_class(1, 64));
  EXPECT_EQ(tensor_delta(mpq_class(1, 4), 3), mpq_class(1, 4096));
  EXPECT_EQ(tensor_delta(mpq_class(1, 2), 4), mpq_class(1, 65536));
}

TEST(ExactIrreducible, Examples) {
  EXPECT_EQ(exact_irreducible_fraction(Tensor::constant({4, 4, 4}, 1), 4), 0);
  EXPECT_EQ(exact_irreducible_fraction(Tensor::constant({5, 6, 5}, 1), 4), 0);
  EXPECT_EQ(exact_irreducible_fraction(Tensor::from_matrix(Matrix::identity(4)), 2), mpq_class(1, 6));
  EXPECT_EQ(exact_irreducible_fraction(Tensor::from_matrix(rank_one_corrupted()), 2), mpq_class(1, 4));
  EXPECT_THROW(exact_irreducible_fraction(Tensor({3, 3, 3}), 4), DimensionError);
  EXPECT_THROW(exact_irreducible_fraction(Tensor::constant({30, 30, 30}, 1), 4, 1000), CapExceeded);
}

TEST(ExactIrreducible, MatchesFlatteningOracle) {
  Rng rng(71);
  for (int trial = 0; trial < 12; ++trial) {
    const Tensor t = make_random_rank1_tensor({4, 5, 4}, rng.next(), rng.below(4));
    EXPECT_EQ(exact_irreducible_fraction(t, 2), oracle_irreducible_fraction(t, 2));
  }
  const Tensor b = blow_up(two_slice_example(), 2);
  EXPECT_EQ(exact_irreducible_fraction(b, 2), oracle_irreducible_fraction(b, 2));
  EXPECT_EQ(exact_irreducible_fraction(Tensor::from_matrix(Matrix::identity(4)), 2),
            singular_fraction(Matrix::identity(4), 2).nonsingular_fraction());
}

TEST(TensorTester, Examples) {
  TesterConfig c;
  c.samples = 300;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    c.seed = seed;
    const Verdict v = tensor_reducibility_tester(make_random_rank1_tensor({5, 6, 4}, seed, 0), c);
    EXPECT_EQ(v.decision, Decision::accept);
    EXPECT_EQ(v.observed_bad_fraction, 0);
    EXPECT_EQ(v.threshold, mpq_class(1, 4096));
    EXPECT_EQ(tensor_reducibility_tester(Tensor({4, 4, 4}), c).decision, Decision::accept);
  }
  EXPECT_THROW(tensor_reducibility_tester(Tensor({3, 4, 4}), c), DimensionError);
  c.samples = 0;
  EXPECT_THROW(tensor_reducibility_tester(Tensor({4, 4, 4}), c), DomainError);
}

TEST(TensorTester, RejectsFarTensor) {
  const Tensor far = blow_up(two_slice_example(), 4);
  // Exact oracle value, then the binomial tail it implies for 400 samples.
  const mpq_class f = exact_irreducible_fraction(far, 4);
  EXPECT_GT(f, mpq_class(1, 10));
  EXPECT_LT(std::pow(1.0 - f.get_d(), 400.0), 1e-6);
  TesterConfig c;
  c.samples = 400;
  int rejected = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    c.seed = seed;
    rejected += tensor_reducibility_tester(far, c).decision == Decision::reject;
  }
  EXPECT_GE(rejected, 198);
}

TEST(TensorTester, OneSidedOnReducibleInputs) {
  Rng rng(72);
  TesterConfig c;
  c.samples = 200;
  for (int trial = 0; trial < 30; ++trial) {
    // Reducible w.r.t. {1}|{2,3} with an arbitrary (non rank-1) second factor.
    Tensor a = Tensor::from_vector(std::vector<Scalar>{Scalar(rng.between(-3, 3)), Scalar(rng.between(-3, 3)),
                                                       Scalar(rng.between(-3, 3)), Scalar(rng.between(-3, 3))});
    Tensor b({4, 5});
    for (std::size_t k = 0; k < b.size(); ++k) b[k] = rng.between(-3, 3);
    c.seed = rng.next();
    const Verdict v = tensor_reducibility_tester(tensor_product(a, b), c);
    EXPECT_EQ(v.bad, 0u);
    EXPECT_EQ(v.decision, Decision::accept);
  }
}

TEST(TensorTester, SamplingConsistency) {
  // 10⁴ seeds at 2000 samples on a matrix with exact fraction f.
  const Tensor t = Tensor::from_matrix(make_random_low_rank(6, 1, 73, 3, false));
  const double f = exact_irreducible_fraction(t, 2).get_d();
  ASSERT_GT(f, 0.05);
  TesterConfig c;
  c.samples = 2000;
  int deviations = 0;
  for (std::uint64_t seed = 0; seed < 10'000; ++seed) {
    c.seed = seed;
    const double observed = tensor_reducibility_tester(t, c).observed_bad_fraction.get_d();
    deviations += std::abs(observed - f) > 0.05;
  }
  EXPECT_LT(deviations, 100);
}

TEST(MatrixTester, Examples) {
  TesterConfig c;
  c.samples = 500;
  c.epsilon = mpq_class(1, 12);
  const Matrix low = make_random_low_rank(6, 1, 5, 0, false);
  EXPECT_EQ(matrix_rank_tester(low, 2, c).decision, Decision::accept);
  EXPECT_EQ(matrix_rank_tester(low, 2, c).observed_bad_fraction, 0);
  EXPECT_EQ(matrix_rank_tester(Matrix(5, 5), 2, c).decision, Decision::accept);

  c.samples = 4000;
  int rejected = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    c.seed = seed;
    rejected += matrix_rank_tester(Matrix::identity(4), 2, c).decision == Decision::reject;
  }
  EXPECT_EQ(rejected, 50);
  EXPECT_THROW(matrix_rank_tester(Matrix::identity(3), 4, c), DimensionError);
}

TEST(MatrixTester, IdentityFractionPerN) {
  // Nonsingular 2×2 submatrices of I_n: rows = cols, so C(n,2)⁻¹.
  for (std::size_t n = 2; n <= 7; ++n) {
    const mpq_class expect(1, static_cast<unsigned long>(binomial(n, 2)));
    EXPECT_EQ(singular_fraction(Matrix::identity(n), 2).nonsingular_fraction(), expect);
  }
}

TEST(TupleCounting, Examples) {
  SubsetDistribution full{{all_indices(5), 1}};
  auto rep = tuple_counting_check(full, 5, 3, mpq_class(1, 10), 1);
  EXPECT_TRUE(rep.holds);
  EXPECT_EQ(rep.bad_subsets, 0u);

  SubsetDistribution drop_one;
  for (std::size_t k = 0; k < 6; ++k) {
    IndexSet s;
    for (std::size_t i = 0; i < 6; ++i) {
      if (i != k) s.push_back(i);
    }
    drop_one.emplace_back(s, mpq_class(1, 6));
  }
  rep = tuple_counting_check(drop_one, 6, 2, mpq_class(1, 6), 1);
  EXPECT_TRUE(rep.holds);
  EXPECT_EQ(rep.bad_subsets, 0u);

  EXPECT_THROW(tuple_counting_check({{{0, 1}, mpq_class(1, 2)}}, 3, 1, mpq_class(1, 2), 1), DomainError);
  EXPECT_THROW(tuple_counting_check({{{1, 0}, 1}}, 3, 1, mpq_class(1, 2), 1), DomainError);
  EXPECT_THROW(tuple_counting_check({{{0, 5}, 1}}, 3, 1, mpq_class(1, 2), 1), DomainError);
  // Precondition fails: |I| = 1 < (1 − 1/3)·3.
  EXPECT_THROW(tuple_counting_check({{{0}, 1}}, 3, 1, mpq_class(1, 3), 1), DomainError);
}

TEST(TupleCounting, RandomInstancesAlwaysHold) {
  Rng rng(74);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto in = polylo::testing::random_tuple_instance(rng);
    if (!in) continue;
    const auto rep = tuple_counting_check(in->dist, in->n, in->r, in->delta, in->p);
    ++checked;
    EXPECT_TRUE(rep.holds) << "n=" << in->n << " r=" << in->r << " δ=" << in->delta << " p=" << in->p;
    EXPECT_EQ(rep.large_probability, in->large);
  }
  EXPECT_GT(checked, 500);
}
