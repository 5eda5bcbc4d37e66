#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "polylo/scalar.hpp"

namespace polylo {

/// (variable, exponent) pairs, variables strictly increasing, exponents ≥ 1.
/// The empty monomial is the constant term.
using Monomial = std::vector<std::pair<std::size_t, unsigned>>;

/// Sparse polynomial in n variables x_0 … x_{n−1}; zero coefficients are never stored.
class PolynomialSpec {
 public:
  explicit PolynomialSpec(std::size_t n_vars = 0) : n_vars_(n_vars) {}

  static PolynomialSpec constant(std::size_t n_vars, const Scalar& c);
  static PolynomialSpec variable(std::size_t n_vars, std::size_t i);
  static PolynomialSpec linear(std::span<const Scalar> coeffs);

  /// Adds c·m, merging with an existing term. Unsorted or repeated variables
  /// in m are normalized; zero exponents are dropped.
  void add_term(Monomial m, const Scalar& c);

  std::size_t n_vars() const { return n_vars_; }
  unsigned degree() const;
  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Variables that occur in some term, ascending.
  std::vector<std::size_t> active_variables() const;

  Scalar evaluate(std::span<const Scalar> x) const;

  /// f(−x).
  PolynomialSpec negate_variables() const;

  PolynomialSpec& operator+=(const PolynomialSpec& o);
  PolynomialSpec& operator-=(const PolynomialSpec& o);
  friend PolynomialSpec operator+(PolynomialSpec a, const PolynomialSpec& b) { return a += b; }
  friend PolynomialSpec operator-(PolynomialSpec a, const PolynomialSpec& b) { return a -= b; }
  friend PolynomialSpec operator*(const PolynomialSpec& a, const PolynomialSpec& b);
  friend PolynomialSpec operator*(PolynomialSpec a, const Scalar& c);

  friend bool operator==(const PolynomialSpec& a, const PolynomialSpec& b) {
    return a.n_vars_ == b.n_vars_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t n_vars_;
  std::map<Monomial, Scalar> terms_;
};

unsigned total_degree(const Monomial& m);

}  // namespace polylo
