#include <gtest/gtest.h>

#include <polylo/anticoncentration.hpp>
#include <polylo/decoupling.hpp>
#include <polylo/errors.hpp>
#include <polylo/random.hpp>

#include "instances.hpp"

using namespace polylo;
using polylo::testing::random_parts;
using polylo::testing::random_quadratic;

namespace {

// Independent oracle: Pr[f(ξ⁽⁰⁾[X], ξ[Y]) = … = f(ξ⁽ᵏ⁾[X], ξ[Y]) = z] by brute force.
mpq_class copies_probability(const PolynomialSpec& f, const IndexSet& xs, const IndexSet& ys, unsigned k,
                             const Scalar& z) {
  const std::size_t n = f.n_vars();
  std::uint64_t hits = 0;
  const std::size_t bits = xs.size() * (k + 1) + ys.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    std::vector<Scalar> point(n);
    std::size_t b = 0;
    for (auto y : ys) point[y] = (mask >> b++) & 1 ? 1 : -1;
    bool all = true;
    for (unsigned c = 0; c <= k && all; ++c) {
      for (auto x : xs) point[x] = (mask >> b++) & 1 ? 1 : -1;
      all = f.evaluate(point) == z;
    }
    hits += all;
  }
  mpz_class den = 1;
  den <<= bits;
  mpq_class q(mpz_class(static_cast<unsigned long>(hits)), den);
  q.canonicalize();
  return q;
}

}  // namespace

TEST(Jensen, Examples) {
  EventTable always{{mpq_class(1, 3), mpq_class(2, 3)}, {1}, {{true}, {true}}};
  auto r = verify_jensen_decoupling(always, 2);
  EXPECT_EQ(r.lhs, 1);
  EXPECT_EQ(r.rhs, 1);
  EXPECT_TRUE(r.holds);

  EventTable equal{{mpq_class(1, 2), mpq_class(1, 2)}, {mpq_class(1, 2), mpq_class(1, 2)}, {{true, false}, {false, true}}};
  r = verify_jensen_decoupling(equal, 1);
  EXPECT_EQ(r.lhs, mpq_class(1, 2));
  EXPECT_EQ(r.rhs, mpq_class(1, 4));
  EXPECT_EQ(pow(r.lhs, 2), r.rhs);
  EXPECT_TRUE(r.holds);

  EventTable bad{{mpq_class(1, 2)}, {1}, {{true}}};
  EXPECT_THROW(verify_jensen_decoupling(bad, 1), DomainError);
  EventTable ragged{{1}, {1}, {{true, false}}};
  EXPECT_THROW(verify_jensen_decoupling(ragged, 1), DomainError);
}

TEST(Jensen, RandomTablesMatchTupleEnumeration) {
  Rng rng(91);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t ne = 1 + rng.below(4);
    const std::size_t nf = 1 + rng.below(4);
    auto weights = [&](std::size_t m) {
      std::vector<mpq_class> w(m);
      unsigned long sum = 0;
      std::vector<unsigned long> raw(m);
      for (auto& x : raw) sum += (x = 1 + rng.below(5));
      for (std::size_t i = 0; i < m; ++i) {
        w[i] = mpq_class(raw[i], sum);
        w[i].canonicalize();
      }
      return w;
    };
    EventTable t{weights(ne), weights(nf), std::vector<std::vector<bool>>(ne, std::vector<bool>(nf))};
    for (auto& row : t.event) {
      for (std::size_t f = 0; f < nf; ++f) row[f] = rng.coin();
    }
    const unsigned k = 1 + static_cast<unsigned>(rng.below(3));
    const auto r = verify_jensen_decoupling(t, k);
    EXPECT_TRUE(r.holds);
    // rhs by enumerating (E₀, …, E_k, F) tuples.
    mpq_class brute = 0;
    std::vector<std::size_t> e(k + 1, 0);
    for (std::size_t f = 0; f < nf; ++f) {
      std::fill(e.begin(), e.end(), 0);
      for (;;) {
        mpq_class w = t.f_weights[f];
        bool all = true;
        for (auto x : e) {
          w *= t.e_weights[x];
          all = all && t.event[x][f];
        }
        if (all) brute += w;
        std::size_t pos = 0;
        while (pos <= k && ++e[pos] == ne) e[pos++] = 0;
        if (pos > k) break;
      }
    }
    EXPECT_EQ(r.rhs, brute);
  }
}

TEST(QuadraticForm, Extraction) {
  PolynomialSpec f(3);
  f.add_term({{0, 1}, {1, 1}}, 4);
  f.add_term({{2, 2}}, 3);
  f.add_term({{1, 1}}, -1);
  f.add_term({}, 5);
  const auto q = quadratic_form(f);
  EXPECT_EQ(q.a, (Matrix{{0, 2, 0}, {2, 0, 0}, {0, 0, 3}}));
  EXPECT_EQ(q.b[1], Scalar(-1));
  EXPECT_EQ(q.c, Scalar(5));
  PolynomialSpec cubic(1);
  cubic.add_term({{0, 3}}, 1);
  EXPECT_THROW(quadratic_form(cubic), DomainError);
}

TEST(QuadraticDecoupling, Examples) {
  PolynomialSpec f(2);
  f.add_term({{0, 1}, {1, 1}}, 1);
  auto r = verify_quadratic_decoupling(f, {0}, {1}, 1);
  EXPECT_EQ(r.lhs, mpq_class(1, 2));
  EXPECT_EQ(r.rhs, mpq_class(1, 2));
  EXPECT_TRUE(r.holds);

  PolynomialSpec lin(3);
  lin.add_term({{0, 1}}, 1);
  lin.add_term({{1, 1}}, 2);
  lin.add_term({{2, 1}}, 1);
  for (unsigned k = 1; k <= 2; ++k) EXPECT_TRUE(verify_quadratic_decoupling(lin, {0, 1}, {2}, k).holds);

  EXPECT_THROW(verify_quadratic_decoupling(f, {0}, {0, 1}, 1), DomainError);
  EXPECT_THROW(verify_quadratic_decoupling(f, {0}, {}, 1), DomainError);
}

TEST(QuadraticDecoupling, RandomQuadraticsAndChain) {
  Rng rng(92);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.below(6);
    const auto f = random_quadratic(rng, n);
    const auto parts = random_parts(rng, n, 2);
    const unsigned k = 1 + static_cast<unsigned>(rng.below(2));
    const auto r = verify_quadratic_decoupling(f, parts[0], parts[1], k);
    ASSERT_TRUE(r.holds) << "trial " << trial;
    if (trial % 5 == 0) {
      // lhs^{k+1} ≤ Pr[k+1 copies agree at z*] ≤ rhs.
      const auto z = max_point_probability(f, RandomModel::rademacher()).z;
      const mpq_class mid = copies_probability(f, parts[0], parts[1], k, z);
      EXPECT_LE(pow(r.lhs, k + 1), mid);
      EXPECT_LE(mid, r.rhs);
    }
  }
}

TEST(TripleDecoupling, Examples) {
  auto r = verify_triple_decoupling(PolynomialSpec(3), {0}, {1}, {2});
  EXPECT_EQ(r.lhs, 1);
  EXPECT_EQ(r.rhs, 1);
  EXPECT_TRUE(r.holds);

  PolynomialSpec f(3);
  f.add_term({{0, 1}, {1, 1}}, 1);
  f.add_term({{1, 1}, {2, 1}}, 1);
  f.add_term({{0, 1}, {2, 1}}, 1);
  r = verify_triple_decoupling(f, {0}, {1}, {2});
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.lhs, mpq_class(3, 4));  // values −1 (3/4) and 3 (1/4)
  EXPECT_EQ(r.power, 4u);

  PolynomialSpec cubic(3);
  cubic.add_term({{0, 1}, {1, 1}, {2, 1}}, 1);
  EXPECT_THROW(verify_triple_decoupling(cubic, {0}, {1}, {2}), DomainError);
}

TEST(TripleDecoupling, RandomQuadratics) {
  Rng rng(93);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_quadratic(rng, 6);
    std::vector<std::size_t> perm = all_indices(6);
    rng.shuffle(std::span<std::size_t>(perm));
    const IndexSet x{perm[0], perm[1]};
    const IndexSet y{perm[2], perm[3]};
    const IndexSet z{perm[4], perm[5]};
    const auto r = verify_triple_decoupling(f, x, y, z);
    EXPECT_TRUE(r.holds) << "trial " << trial << " lhs " << r.lhs << " rhs " << r.rhs;
  }
}
