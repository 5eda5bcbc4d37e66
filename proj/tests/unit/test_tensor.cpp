#include <gtest/gtest.h>

#include <polylo/constructions.hpp>
#include <polylo/errors.hpp>
#include <polylo/random.hpp>
#include <polylo/tensor.hpp>

using namespace polylo;

namespace {

// T with last-axis slices s0, s1 (both 2×2): T(i, j, k) = s_k(i, j).
Tensor two_slices(const Matrix& s0, const Matrix& s1) {
  Tensor t({2, 2, 2});
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      t.at(std::vector<std::size_t>{i, j, 0}) = s0(i, j);
      t.at(std::vector<std::size_t>{i, j, 1}) = s1(i, j);
    }
  }
  return t;
}

Tensor random_tensor(Rng& rng, const std::vector<std::size_t>& dims) {
  Tensor t(dims);
  for (std::size_t c = 0; c < t.size(); ++c) t[c] = rng.between(-3, 3);
  return t;
}

std::vector<Scalar> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Partitions, CanonicalOrder) {
  const auto p3 = canonical_partitions(3);
  ASSERT_EQ(p3.size(), 3u);
  EXPECT_EQ(p3[0].j1, (IndexSet{0}));
  EXPECT_EQ(p3[1].j1, (IndexSet{0, 1}));
  EXPECT_EQ(p3[2].j1, (IndexSet{0, 2}));
  EXPECT_EQ(canonical_partitions(4).size(), 7u);
  EXPECT_EQ(canonical_partitions(2).size(), 1u);
  EXPECT_EQ(make_partition({1, 2}, 3).j1, (IndexSet{0}));
  EXPECT_THROW(make_partition({0, 1, 2}, 3), DimensionError);
  const auto p = parse_partition("1,2|3", 3);
  EXPECT_EQ(p.j1, (IndexSet{0, 1}));
  EXPECT_EQ(to_string(p), "1,2|3");
  EXPECT_EQ(parse_partition("3|1,2", 3).j1, (IndexSet{2}));
  EXPECT_THROW(parse_partition("1|2", 3), DimensionError);
}

TEST(Flatten, Examples) {
  const Matrix m{{1, 2}, {3, 4}};
  EXPECT_EQ(flatten(Tensor::from_matrix(m), make_partition({0}, 2)), m);
  EXPECT_EQ(flatten(Tensor::constant({2, 2, 2}, 1), make_partition({0}, 3)), Matrix::constant(2, 4, 1));

  Tensor t({2, 2, 2});
  for (std::size_t i = 0; i < 2; ++i) t.at(std::vector<std::size_t>{i, i, 0}) = 1;
  Matrix expect(4, 2);
  expect(0, 0) = 1;  // flat(1,1) = 0
  expect(3, 0) = 1;  // flat(2,2) = 3
  EXPECT_EQ(flatten(t, make_partition({0, 1}, 3)), expect);
}

TEST(Reducible, Examples) {
  for (const auto& p : canonical_partitions(3)) EXPECT_TRUE(is_reducible_wrt(Tensor::constant({2, 2, 2}, 1), p));
  EXPECT_FALSE(is_reducible_wrt(Tensor::from_matrix(Matrix::identity(2)), make_partition({0}, 2)));

  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Tensor t = make_random_rank1_tensor({3, 2, 4}, rng.next(), 0);
    EXPECT_TRUE(is_reducible_wrt(t, make_partition({0}, 3)));
  }

  EXPECT_EQ(is_reducible(Tensor::constant({3, 3, 3}, 1)), canonical_partitions(3)[0]);
  EXPECT_FALSE(is_reducible(two_slices(Matrix::identity(2), Matrix{{0, 1}, {0, 0}})).has_value());
  EXPECT_EQ(is_reducible(Tensor({2, 3, 2})), canonical_partitions(3)[0]);
  EXPECT_THROW(is_reducible(Tensor({4})), DomainError);
}

TEST(Reducible, TwoSliceExampleHasRankTwoFlattenings) {
  const Tensor t = two_slices(Matrix::identity(2), Matrix{{0, 1}, {0, 0}});
  for (const auto& p : canonical_partitions(3)) EXPECT_GE(rank(flatten(t, p)), 2u);
}

TEST(Reducible, ComplexEntries) {
  const Scalar i = Scalar::i();
  // u ⊗ v with u = (1, i), v = (i, 2).
  const Tensor t({2, 2}, {i, Scalar(2), Scalar(-1), Scalar(2) * i});
  EXPECT_TRUE(is_reducible_wrt(t, make_partition({0}, 2)));
  const Tensor s({2, 2}, {i, Scalar(2), Scalar(1), Scalar(2) * i});
  EXPECT_FALSE(is_reducible_wrt(s, make_partition({0}, 2)));
}

TEST(Subtensor, Examples) {
  Rng rng(4);
  const Tensor t = random_tensor(rng, {3, 2, 4});
  EXPECT_EQ(subtensor(t, {{0, 1, 2}, {0, 1}, {0, 1, 2, 3}}), t);
  const Tensor single = subtensor(t, {{2}, {1}, {3}});
  EXPECT_EQ(single.dims(), (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(single[0], t.at(std::vector<std::size_t>{2, 1, 3}));
  EXPECT_EQ(subtensor(Tensor::constant({4, 4, 4}, 1), {{0, 3}, {1, 2}, {2, 3}}), Tensor::constant({2, 2, 2}, 1));
  EXPECT_THROW(subtensor(t, {{3}, {0}, {0}}), DimensionError);
}

TEST(Collapse, Examples) {
  const Tensor t = two_slices(Matrix::identity(2), Matrix{{0, 1}, {1, 0}});
  EXPECT_EQ(collapse(t, ints({1, 1})), Tensor::constant({2, 2}, 1));
  EXPECT_EQ(collapse(t, ints({1, 0})), Tensor::from_matrix(Matrix::identity(2)));
  EXPECT_EQ(collapse(t, ints({1, -1})), Tensor::from_matrix(Matrix{{1, -1}, {-1, 1}}));
  EXPECT_THROW(collapse(t, ints({1, 1, 1})), DimensionError);
}

TEST(TensorProduct, Examples) {
  const Tensor u = Tensor::from_vector(ints({1, 2}));
  const Tensor v = Tensor::from_vector(ints({3, 4}));
  EXPECT_EQ(tensor_product(u, v), Tensor::from_matrix(Matrix{{3, 4}, {6, 8}}));
  EXPECT_TRUE(tensor_product(u, Tensor({3})).is_zero());
  EXPECT_LE(rank(flatten(tensor_product(u, v), make_partition({0}, 2))), 1u);
}

// --- properties -----------------------------------------------------------

TEST(Properties, ProductFlatteningHasRankOne) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d1 = 1 + rng.below(2);
    const std::size_t d2 = 1 + rng.below(4 - d1);
    std::vector<std::size_t> dims1(d1);
    std::vector<std::size_t> dims2(d2);
    for (auto& x : dims1) x = 1 + rng.below(3);
    for (auto& x : dims2) x = 1 + rng.below(3);
    const Tensor a = random_tensor(rng, dims1);
    const Tensor b = random_tensor(rng, dims2);
    IndexSet j1 = all_indices(d1);
    EXPECT_LE(rank(flatten(tensor_product(a, b), make_partition(j1, d1 + d2))), 1u);
  }
}

TEST(Properties, FactorizationReproducesTensor) {
  Rng rng(32);
  for (int trial = 0; trial < 500; ++trial) {
    const Tensor t = make_random_rank1_tensor({2 + rng.below(3), 2 + rng.below(3), 2 + rng.below(2)}, rng.next(), 0);
    const auto p = is_reducible(t);
    ASSERT_TRUE(p.has_value());
    const auto [a, b] = factorize(t, *p);
    EXPECT_EQ(outer_along(a, b, *p), t);
  }
  const Tensor bad = two_slices(Matrix::identity(2), Matrix{{0, 1}, {0, 0}});
  EXPECT_THROW(factorize(bad, canonical_partitions(3)[0]), DomainError);
}

TEST(Properties, CollapseIsLinear) {
  Rng rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const Tensor t = random_tensor(rng, {2, 3, 4});
    std::vector<Scalar> x(4);
    std::vector<Scalar> y(4);
    std::vector<Scalar> s(4);
    for (std::size_t k = 0; k < 4; ++k) {
      x[k] = Scalar(mpq_class(rng.between(-5, 5), 1 + rng.below(3)));
      y[k] = rng.between(-5, 5);
      s[k] = x[k] + y[k];
    }
    const Tensor lhs = collapse(t, x);
    const Tensor rhs = collapse(t, y);
    Tensor sum(lhs.dims());
    for (std::size_t c = 0; c < sum.size(); ++c) sum[c] = lhs[c] + rhs[c];
    EXPECT_EQ(sum, collapse(t, s));
  }
}

TEST(Properties, CollapseCommutesWithSubtensors) {
  Rng rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    const Tensor t = random_tensor(rng, {4, 3, 3});
    std::vector<Scalar> x(3);
    for (auto& v : x) v = rng.coin() ? 1 : -1;
    const IndexSet s1 = rng.subset(4, 1 + rng.below(4));
    const IndexSet s2 = rng.subset(3, 1 + rng.below(3));
    EXPECT_EQ(subtensor(collapse(t, x), {s1, s2}), collapse(subtensor(t, {s1, s2, all_indices(3)}), x));
  }
}

TEST(Properties, ProbeAgreesWithExactFlattening) {
  Rng rng(35);
  for (int trial = 0; trial < 300; ++trial) {
    Tensor t = make_random_rank1_tensor({3, 3, 3}, rng.next(), rng.below(3));
    if (rng.coin()) t[rng.below(t.size())] = Scalar(mpq_class(1, 3));
    const ReducibilityProbe probe(t);
    const std::vector<IndexSet> sets{rng.subset(3, 2), rng.subset(3, 2), rng.subset(3, 2)};
    const Tensor sub = subtensor(t, sets);
    for (const auto& p : probe.partitions()) {
      EXPECT_EQ(probe.reducible_wrt(sets, p), rank(flatten(sub, p)) <= 1);
    }
  }
}
