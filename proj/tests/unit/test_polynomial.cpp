#include <gtest/gtest.h>

#include <polylo/errors.hpp>
#include <polylo/polynomial.hpp>
#include <polylo/random.hpp>

using namespace polylo;

TEST(Polynomial, TermNormalization) {
  PolynomialSpec f(3);
  f.add_term({{2, 1}, {0, 1}, {2, 1}}, 2);  // 2·x0·x2²
  f.add_term({{0, 1}, {2, 2}}, -2);
  EXPECT_TRUE(f.is_zero());
  f.add_term({{1, 0}}, 5);
  EXPECT_EQ(f, PolynomialSpec::constant(3, 5));
  EXPECT_EQ(f.degree(), 0u);
  EXPECT_THROW(f.add_term({{3, 1}}, 1), DimensionError);
}

TEST(Polynomial, EvaluateAndDegree) {
  // (x0 + x1)(x0 − x1) = x0² − x1²
  const auto x0 = PolynomialSpec::variable(2, 0);
  const auto x1 = PolynomialSpec::variable(2, 1);
  const auto f = (x0 + x1) * (x0 - x1);
  EXPECT_EQ(f.terms().size(), 2u);
  EXPECT_EQ(f.degree(), 2u);
  const std::vector<Scalar> p{3, 1};
  EXPECT_EQ(f.evaluate(p), Scalar(8));
  EXPECT_EQ(f.active_variables(), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(total_degree({{0, 2}, {1, 3}}), 5u);
}

TEST(Polynomial, NegateVariables) {
  Rng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    PolynomialSpec f(3);
    for (int t = 0; t < 4; ++t) {
      f.add_term({{rng.below(3), 1 + static_cast<unsigned>(rng.below(3))}, {rng.below(3), 1}}, rng.between(-3, 3));
    }
    std::vector<Scalar> x(3);
    std::vector<Scalar> minus(3);
    for (std::size_t i = 0; i < 3; ++i) {
      x[i] = rng.between(-4, 4);
      minus[i] = -x[i];
    }
    EXPECT_EQ(f.negate_variables().evaluate(x), f.evaluate(minus));
  }
}

TEST(Polynomial, RingLawsOnEvaluation) {
  Rng rng(62);
  auto random_poly = [&] {
    PolynomialSpec f(2);
    for (int t = 0; t < 3; ++t) f.add_term({{rng.below(2), static_cast<unsigned>(rng.below(3))}}, rng.between(-3, 3));
    return f;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_poly();
    const auto g = random_poly();
    const std::vector<Scalar> x{Scalar(rng.between(-5, 5)), Scalar(mpq_class(1, 1 + rng.below(4)))};
    EXPECT_EQ((f * g).evaluate(x), f.evaluate(x) * g.evaluate(x));
    EXPECT_EQ((f + g).evaluate(x), f.evaluate(x) + g.evaluate(x));
    EXPECT_EQ((f * Scalar(3)).evaluate(x), Scalar(3) * f.evaluate(x));
  }
}
