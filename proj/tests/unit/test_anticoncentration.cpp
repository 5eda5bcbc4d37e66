#include <gtest/gtest.h>

#include <polylo/anticoncentration.hpp>
#include <polylo/constructions.hpp>
#include <polylo/errors.hpp>
#include <polylo/random.hpp>
#include <polylo/stats.hpp>

using namespace polylo;

namespace {

PolynomialSpec ones_linear(std::size_t n) {
  const std::vector<Scalar> c(n, Scalar(1));
  return PolynomialSpec::linear(c);
}

mpq_class total(const ValueDistribution& d) {
  mpq_class s = 0;
  for (const auto& [v, p] : d) s += p;
  return s;
}

// Independent oracle: the central binomial formula.
mpq_class central_binomial(std::size_t n) {
  mpz_class num = binomial(n, n / 2);
  mpz_class den = 1;
  den <<= n;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

RandomModel random_model(Rng& rng, std::size_t n) {
  switch (rng.below(4)) {
    case 0:
      return RandomModel::rademacher();
    case 1:
      return RandomModel::lazy();
    case 2: {
      std::vector<Scalar> s(n);
      for (auto& x : s) x = rng.between(-2, 2);
      return RandomModel::shifted(s);
    }
    default: {
      std::vector<Scalar> s(n);
      for (auto& x : s) x = Scalar(mpq_class(rng.between(-3, 3), 2));
      return RandomModel::shifted(s);
    }
  }
}

}  // namespace

TEST(ExactDistribution, Examples) {
  PolynomialSpec prod(2);
  prod.add_term({{0, 1}, {1, 1}}, 1);
  ValueDistribution expect{{Scalar(-1), mpq_class(1, 2)}, {Scalar(1), mpq_class(1, 2)}};
  EXPECT_EQ(exact_distribution(prod, RandomModel::rademacher()), expect);

  expect = {{Scalar(-3), mpq_class(1, 8)}, {Scalar(-1), mpq_class(3, 8)}, {Scalar(1), mpq_class(3, 8)},
            {Scalar(3), mpq_class(1, 8)}};
  EXPECT_EQ(exact_distribution(ones_linear(3), RandomModel::rademacher()), expect);

  expect = {{Scalar(-1), mpq_class(1, 4)}, {Scalar(0), mpq_class(1, 2)}, {Scalar(1), mpq_class(1, 4)}};
  EXPECT_EQ(exact_distribution(PolynomialSpec::variable(1, 0), RandomModel::lazy()), expect);

  EXPECT_THROW(exact_distribution(ones_linear(30), RandomModel::rademacher(), 1 << 20), CapExceeded);
}

TEST(ExactDistribution, RationalAndComplexCoefficients) {
  PolynomialSpec f(2);
  f.add_term({{0, 1}}, Scalar(mpq_class(1, 2)));
  f.add_term({{1, 1}}, Scalar(mpq_class(1, 3)));
  const auto d = exact_distribution(f, RandomModel::rademacher());
  EXPECT_EQ(d.size(), 4u);
  EXPECT_EQ(d.at(Scalar(mpq_class(5, 6))), mpq_class(1, 4));

  PolynomialSpec g(2);
  g.add_term({{0, 1}}, Scalar::i());
  g.add_term({{1, 1}}, 1);
  EXPECT_EQ(exact_distribution(g, RandomModel::rademacher()).size(), 4u);
  // 2/2 and 1/1 coincide.
  PolynomialSpec h(2);
  h.add_term({{0, 2}}, Scalar(mpq_class(2, 2)));
  EXPECT_EQ(exact_distribution(h, RandomModel::rademacher()).size(), 1u);
}

TEST(ExactDistribution, SumsToOneAndSignSymmetry) {
  Rng rng(81);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(7);
    PolynomialSpec f(n);
    for (int t = 0; t < 5; ++t) {
      Monomial m;
      for (int k = 0; k < 3; ++k) {
        if (rng.coin()) m.emplace_back(rng.below(n), 1 + rng.below(3));
      }
      f.add_term(m, rng.between(-4, 4));
    }
    const RandomModel model = random_model(rng, n);
    const auto d = exact_distribution(f, model);
    EXPECT_EQ(total(d), 1);
    EXPECT_EQ(exact_distribution(f, RandomModel::rademacher()),
              exact_distribution(f.negate_variables(), RandomModel::rademacher()));
  }
}

TEST(MaxPointProbability, Examples) {
  auto r = max_point_probability(ones_linear(3), RandomModel::rademacher());
  EXPECT_EQ(r.probability, mpq_class(3, 8));
  EXPECT_EQ(r.z, Scalar(-1));  // ties: smallest value

  const auto s = PolynomialSpec::variable(2, 0) + PolynomialSpec::variable(2, 1);
  r = max_point_probability(s * s, RandomModel::rademacher());
  EXPECT_EQ(r.z, Scalar(0));
  EXPECT_EQ(r.probability, mpq_class(1, 2));

  r = max_point_probability(make_counterexample(8, 2), RandomModel::rademacher());
  EXPECT_EQ(r.z, Scalar(0));
  EXPECT_EQ(r.probability, mpq_class(19, 32));
  // (3/4)² + 2·(1/8)² from the L_j ∈ {−2, 0, 2} law.
  EXPECT_EQ(r.probability, mpq_class(3, 4) * mpq_class(3, 4) + 2 * mpq_class(1, 8) * mpq_class(1, 8));
}

TEST(MaxPointProbability, PowerSumDominatesLinear) {
  EXPECT_GE(max_point_probability(make_power_sum(3, 2), RandomModel::rademacher()).probability, mpq_class(3, 8));
}

TEST(LinearMaxPoint, Examples) {
  std::vector<Scalar> ones(10, Scalar(1));
  EXPECT_EQ(linear_max_point_probability(ones, RandomModel::rademacher()).probability, mpq_class(63, 256));
  std::vector<Scalar> powers;
  for (int k = 0; k < 10; ++k) powers.emplace_back(1L << k);
  EXPECT_EQ(linear_max_point_probability(powers, RandomModel::rademacher()).probability, mpq_class(1, 1024));

  Rng rng(82);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Scalar> c(1 + rng.below(8));
    for (auto& x : c) x = rng.between(-3, 3);
    std::vector<Scalar> with_zero = c;
    with_zero.insert(with_zero.begin() + static_cast<long>(rng.below(c.size() + 1)), Scalar(0));
    EXPECT_EQ(linear_max_point_probability(c, RandomModel::rademacher()).probability,
              linear_max_point_probability(with_zero, RandomModel::rademacher()).probability);
  }
}

TEST(LinearMaxPoint, CentralBinomialUpToTwenty) {
  for (std::size_t n = 1; n <= 20; ++n) {
    std::vector<Scalar> ones(n, Scalar(1));
    EXPECT_EQ(linear_max_point_probability(ones, RandomModel::rademacher()).probability, central_binomial(n)) << n;
  }
}

TEST(LinearMaxPoint, AgreesWithEnumeration) {
  Rng rng(83);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng.below(14);
    std::vector<Scalar> c(n);
    for (auto& x : c) {
      x = rng.below(4) == 0 ? Scalar(mpq_class(rng.between(-5, 5), 1 + rng.below(3))) : Scalar(rng.between(-3, 3));
    }
    const RandomModel model = random_model(rng, n);
    const auto f = PolynomialSpec::linear(c);
    if (n > 9 && model.name() == "lazy") continue;  // keep 3ⁿ enumeration small
    const auto dp = linear_distribution(c, model);
    EXPECT_EQ(dp, exact_distribution(f, model));
    const auto a = linear_max_point_probability(c, model);
    const auto b = max_point_probability(f, model);
    EXPECT_EQ(a.probability, b.probability);
    EXPECT_EQ(a.z, b.z);
  }
}

TEST(MonteCarlo, Examples) {
  const auto f = ones_linear(10);
  const auto r = monte_carlo_point_probability(f, Scalar(0), RandomModel::rademacher(), 100'000, 7);
  EXPECT_TRUE(r.interval.contains(mpq_class(63, 256).get_d()));
  EXPECT_FALSE(r.exact);
  EXPECT_EQ(monte_carlo_point_probability(PolynomialSpec(3), Scalar(0), RandomModel::lazy(), 500, 1).estimate, 1.0);
  EXPECT_EQ(
      monte_carlo_point_probability(PolynomialSpec::variable(1, 0), Scalar(7), RandomModel::rademacher(), 500, 1)
          .estimate,
      0.0);
  EXPECT_THROW(monte_carlo_point_probability(f, Scalar(0), RandomModel::rademacher(), 0, 1), DomainError);
}

TEST(MonteCarlo, CoverageAcrossModels) {
  // Non-integral (rational shift) and integral paths both cover the exact value.
  const auto f = make_power_sum(4, 2);
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RandomModel model = seed % 2 == 0 ? RandomModel::lazy() : parse_model("shifted", Scalar(mpq_class(1, 2)));
    const auto exact = max_point_probability(f, model);
    const auto mc = monte_carlo_point_probability(f, exact.z, model, 4000, seed);
    covered += mc.interval.contains(exact.probability.get_d());
  }
  EXPECT_GE(covered, 95);
}

TEST(Collapse, ReducibleProbability) {
  auto slices = [](const Matrix& s0, const Matrix& s1) {
    Tensor t({2, 2, 2});
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        t.at(std::vector<std::size_t>{i, j, 0}) = s0(i, j);
        t.at(std::vector<std::size_t>{i, j, 1}) = s1(i, j);
      }
    }
    return t;
  };
  EXPECT_EQ(collapse_reducible_probability(slices(Matrix::identity(2), Matrix{{0, 1}, {1, 0}}),
                                           RandomModel::rademacher()),
            1);
  EXPECT_EQ(collapse_reducible_probability(slices(Matrix::identity(2), Matrix{{0, 1}, {0, 0}}),
                                           RandomModel::rademacher()),
            0);
  EXPECT_EQ(collapse_reducible_probability(Tensor({2, 3, 4}), RandomModel::lazy()), 1);
  // Lazy: x = 0 makes the collapse zero, hence reducible.
  EXPECT_EQ(collapse_reducible_probability(slices(Matrix::identity(2), Matrix{{0, 1}, {0, 0}}), RandomModel::lazy()),
            mpq_class(1, 2));
  EXPECT_THROW(collapse_reducible_probability(Tensor({2, 2}), RandomModel::lazy()), DomainError);
}

TEST(Models, Parsing) {
  EXPECT_EQ(parse_model("rademacher").name(), "rademacher");
  EXPECT_EQ(parse_model("lazy").name(), "lazy");
  EXPECT_EQ(parse_model("shifted", Scalar(3)).law(5).support()[1].first, Scalar(4));
  EXPECT_THROW(parse_model("gaussian"), DomainError);
}

TEST(Counterexample, ProductLowerBound) {
  for (std::size_t n : {8, 16}) {
    const auto parts = counterexample_parts(n, 2);
    const auto d = exact_distribution(make_counterexample(n, 2), RandomModel::rademacher());
    const std::vector<Scalar> ones(parts[0].size(), Scalar(1));
    const auto l = linear_distribution(ones, RandomModel::rademacher());
    EXPECT_GE(d.at(Scalar(0)), l.at(Scalar(0)) * l.at(Scalar(0)));
  }
}
