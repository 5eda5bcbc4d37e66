#include "polylo/polynomial.hpp"

#include <algorithm>
#include <set>

#include "polylo/errors.hpp"

namespace polylo {

unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

PolynomialSpec PolynomialSpec::constant(std::size_t n_vars, const Scalar& c) {
  PolynomialSpec p(n_vars);
  p.add_term({}, c);
  return p;
}

PolynomialSpec PolynomialSpec::variable(std::size_t n_vars, std::size_t i) {
  PolynomialSpec p(n_vars);
  p.add_term({{i, 1}}, 1);
  return p;
}

PolynomialSpec PolynomialSpec::linear(std::span<const Scalar> coeffs) {
  PolynomialSpec p(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) p.add_term({{i, 1}}, coeffs[i]);
  return p;
}

void PolynomialSpec::add_term(Monomial m, const Scalar& c) {
  std::sort(m.begin(), m.end());
  Monomial norm;
  for (const auto& [v, e] : m) {
    if (v >= n_vars_) throw DimensionError("polynomial: variable index out of range");
    if (e == 0) continue;
    if (!norm.empty() && norm.back().first == v) {
      norm.back().second += e;
    } else {
      norm.emplace_back(v, e);
    }
  }
  if (c.is_zero()) return;
  auto it = terms_.find(norm);
  if (it == terms_.end()) {
    terms_.emplace(std::move(norm), c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

unsigned PolynomialSpec::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
  return d;
}

std::vector<std::size_t> PolynomialSpec::active_variables() const {
  std::set<std::size_t> vars;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m) vars.insert(v);
  }
  return {vars.begin(), vars.end()};
}

Scalar PolynomialSpec::evaluate(std::span<const Scalar> x) const {
  if (x.size() != n_vars_) throw DimensionError("polynomial: point has wrong length");
  Scalar total;
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (const auto& [v, e] : m) t *= pow(x[v], e);
    total += t;
  }
  return total;
}

PolynomialSpec PolynomialSpec::negate_variables() const {
  PolynomialSpec out(n_vars_);
  for (const auto& [m, c] : terms_) out.add_term(m, total_degree(m) % 2 == 0 ? c : -c);
  return out;
}

PolynomialSpec& PolynomialSpec::operator+=(const PolynomialSpec& o) {
  if (o.n_vars_ > n_vars_) n_vars_ = o.n_vars_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PolynomialSpec& PolynomialSpec::operator-=(const PolynomialSpec& o) {
  if (o.n_vars_ > n_vars_) n_vars_ = o.n_vars_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PolynomialSpec operator*(const PolynomialSpec& a, const PolynomialSpec& b) {
  PolynomialSpec out(std::max(a.n_vars_, b.n_vars_));
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      out.add_term(std::move(m), ca * cb);
    }
  }
  return out;
}

PolynomialSpec operator*(PolynomialSpec a, const Scalar& c) {
  PolynomialSpec out(a.n_vars_);
  for (const auto& [m, t] : a.terms_) out.add_term(m, t * c);
  return out;
}

}  // namespace polylo
