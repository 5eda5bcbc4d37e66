#include "polylo/decoupling.hpp"

#include <algorithm>

#include "polylo/anticoncentration.hpp"
#include "polylo/errors.hpp"

namespace polylo {

namespace {

DecouplingReport report(mpq_class lhs, mpq_class rhs, unsigned power) {
  DecouplingReport r;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.power = power;
  r.holds = pow(r.lhs, power) <= r.rhs;
  return r;
}

void check_weights(const std::vector<mpq_class>& w, const char* what) {
  mpq_class sum = 0;
  for (const auto& x : w) {
    if (x < 0) throw DomainError(std::string("jensen decoupling: negative weight in ") + what);
    sum += x;
  }
  if (sum != 1) throw DomainError(std::string("jensen decoupling: weights of ") + what + " must sum to 1");
}

// Validates that the parts are disjoint and cover [n]; returns them sorted.
std::vector<IndexSet> check_partition(std::vector<IndexSet> parts, std::size_t n) {
  std::vector<int> seen(n, 0);
  for (auto& p : parts) {
    std::sort(p.begin(), p.end());
    for (auto i : p) {
      if (i >= n || seen[i]++ != 0) throw DomainError("decoupling: parts must partition the variables");
    }
  }
  if (std::count(seen.begin(), seen.end(), 0) != 0) throw DomainError("decoupling: parts must cover every variable");
  return parts;
}

// All points of {−1,1}^k, first coordinate slowest.
std::vector<std::vector<Scalar>> sign_vectors(std::size_t k) {
  std::vector<std::vector<Scalar>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<Scalar> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = (mask >> (k - 1 - i)) & 1U ? Scalar(1) : Scalar(-1);
    out.push_back(std::move(v));
  }
  return out;
}

Scalar bilinear(const std::vector<Scalar>& u, const Matrix& a, const IndexSet& rows, const IndexSet& cols,
                const std::vector<Scalar>& v) {
  Scalar s;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < cols.size(); ++j) s += u[i] * a(rows[i], cols[j]) * v[j];
  }
  return s;
}

Scalar dot(const std::vector<Scalar>& b, const IndexSet& idx, const std::vector<Scalar>& v) {
  Scalar s;
  for (std::size_t i = 0; i < idx.size(); ++i) s += b[idx[i]] * v[i];
  return s;
}

std::vector<Scalar> sum(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  std::vector<Scalar> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

std::vector<Scalar> diff(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  std::vector<Scalar> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

void check_cap(std::size_t bits, std::uint64_t cap, const char* what) {
  if (bits >= 63 || (std::uint64_t{1} << bits) > cap) throw CapExceeded(what);
}

}  // namespace

DecouplingReport verify_jensen_decoupling(const EventTable& table, unsigned k) {
  check_weights(table.e_weights, "E");
  check_weights(table.f_weights, "F");
  if (table.event.size() != table.e_weights.size()) throw DomainError("jensen decoupling: table needs one row per E");
  for (const auto& row : table.event) {
    if (row.size() != table.f_weights.size()) throw DomainError("jensen decoupling: table needs one column per F");
  }
  // Pr[ℰ(E₀,F) ∩ … ∩ ℰ(E_k,F)] = Σ_F Pr[F]·Pr[ℰ(E,F) | F]^{k+1}.
  mpq_class lhs = 0;
  mpq_class rhs = 0;
  for (std::size_t f = 0; f < table.f_weights.size(); ++f) {
    mpq_class conditional = 0;
    for (std::size_t e = 0; e < table.e_weights.size(); ++e) {
      if (table.event[e][f]) conditional += table.e_weights[e];
    }
    lhs += table.f_weights[f] * conditional;
    rhs += table.f_weights[f] * pow(conditional, k + 1);
  }
  return report(lhs, rhs, k + 1);
}

QuadraticForm quadratic_form(const PolynomialSpec& f) {
  if (f.degree() > 2) throw DomainError("quadratic_form: polynomial has degree above 2");
  const std::size_t n = f.n_vars();
  QuadraticForm q{Matrix(n, n), std::vector<Scalar>(n), Scalar()};
  const Scalar half(mpq_class(1, 2));
  for (const auto& [mono, c] : f.terms()) {
    if (mono.empty()) {
      q.c += c;
    } else if (mono.size() == 1 && mono[0].second == 1) {
      q.b[mono[0].first] += c;
    } else if (mono.size() == 1) {
      q.a(mono[0].first, mono[0].first) += c;
    } else {
      const auto i = mono[0].first;
      const auto j = mono[1].first;
      q.a(i, j) += c * half;
      q.a(j, i) += c * half;
    }
  }
  return q;
}

DecouplingReport verify_quadratic_decoupling(const PolynomialSpec& f, const IndexSet& x_set, const IndexSet& y_set,
                                             unsigned k, std::uint64_t cap) {
  if (k == 0) throw DomainError("quadratic decoupling: k must be ≥ 1");
  const QuadraticForm q = quadratic_form(f);
  const auto parts = check_partition({x_set, y_set}, f.n_vars());
  const IndexSet& xs = parts[0];
  const IndexSet& ys = parts[1];
  check_cap(2 * xs.size() + ys.size(), cap, "quadratic decoupling: enumeration exceeds the cap");

  const mpq_class lhs = max_point_probability(f, RandomModel::rademacher()).probability;

  const auto x_points = sign_vectors(xs.size());
  const auto y_points = sign_vectors(ys.size());
  auto psi0 = [&](const std::vector<Scalar>& x0, const std::vector<Scalar>& xi) {
    const Scalar quad = bilinear(xi, q.a, xs, xs, xi) - bilinear(x0, q.a, xs, xs, x0);
    return (quad + dot(q.b, xs, diff(xi, x0))) * Scalar(mpq_class(1, 2));
  };

  // For a fixed shift x, the k copies are independent given ξ[Y], so the
  // probability is E_Y[p(ξ[Y])^k] with p the single-copy frequency.
  const mpq_class copies(static_cast<unsigned long>(x_points.size()));
  mpq_class best = -1;
  for (const auto& shift : x_points) {
    std::vector<std::vector<Scalar>> row(x_points.size());  // (ξ′ − x)ᵀA[X,Y]
    std::vector<Scalar> offset(x_points.size());
    for (std::size_t c = 0; c < x_points.size(); ++c) {
      const auto alpha = diff(x_points[c], shift);
      row[c].resize(ys.size());
      for (std::size_t j = 0; j < ys.size(); ++j) {
        Scalar s;
        for (std::size_t i = 0; i < xs.size(); ++i) s += alpha[i] * q.a(xs[i], ys[j]);
        row[c][j] = s;
      }
      offset[c] = psi0(shift, x_points[c]);
    }
    mpq_class total = 0;
    for (const auto& eta : y_points) {
      std::uint64_t hits = 0;
      for (std::size_t c = 0; c < x_points.size(); ++c) {
        Scalar s = offset[c];
        for (std::size_t j = 0; j < ys.size(); ++j) s += row[c][j] * eta[j];
        hits += s.is_zero();
      }
      total += pow(mpq_class(static_cast<unsigned long>(hits)) / copies, k);
    }
    total /= mpq_class(static_cast<unsigned long>(y_points.size()));
    best = std::max(best, total);
  }
  return report(lhs, best, k + 1);
}

DecouplingReport verify_triple_decoupling(const PolynomialSpec& f, const IndexSet& x_set, const IndexSet& y_set,
                                          const IndexSet& z_set, std::uint64_t cap) {
  const QuadraticForm q = quadratic_form(f);
  const auto parts = check_partition({x_set, y_set, z_set}, f.n_vars());
  const IndexSet& xs = parts[0];
  const IndexSet& ys = parts[1];
  const IndexSet& zs = parts[2];
  // 3^{|X|+|Y|} pairs (α, β), at most 2^{|X|+|Y|} conditionings, 2^{|Z|} for γ.
  std::uint64_t work = 1;
  for (std::size_t i = 0; i < xs.size() + ys.size(); ++i) work *= 6;
  if (xs.size() + ys.size() > 20 || zs.size() >= 40 || work > cap / (std::uint64_t{1} << zs.size())) {
    throw CapExceeded("triple decoupling: enumeration exceeds the cap");
  }

  const mpq_class lhs = max_point_probability(f, RandomModel::rademacher()).probability;

  const auto gammas = sign_vectors(zs.size());
  auto phi0 = [&](const IndexSet& part, const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    return bilinear(a, q.a, part, part, a) - bilinear(b, q.a, part, part, b) + dot(q.b, part, diff(a, b));
  };
  const Scalar half(mpq_class(1, 2));

  // α ∈ {−2,0,2}^X: the unscaled difference ξ[X] − ξ′[X].
  auto differences = [](std::size_t k) {
    std::vector<std::pair<std::vector<Scalar>, mpq_class>> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<Scalar> v(k);
      mpq_class w = 1;
      std::size_t c = code;
      for (std::size_t i = k; i-- > 0;) {
        const std::size_t d = c % 3;
        c /= 3;
        v[i] = Scalar(static_cast<long>(2 * d) - 2);
        w *= d == 1 ? mpq_class(1, 2) : mpq_class(1, 4);
      }
      out.emplace_back(std::move(v), w);
    }
    return out;
  };
  // Base points ξ′ with ξ′ + α ∈ {−1,1}^k.
  auto bases = [](const std::vector<Scalar>& alpha) {
    std::vector<std::vector<Scalar>> out{{}};
    for (const auto& a : alpha) {
      std::vector<std::vector<Scalar>> next;
      for (const auto& prefix : out) {
        for (long s : {-1L, 1L}) {
          const Scalar v(s);
          const Scalar w = v + a;
          if (w == Scalar(1) || w == Scalar(-1)) {
            auto p = prefix;
            p.push_back(v);
            next.push_back(std::move(p));
          }
        }
      }
      out = std::move(next);
    }
    return out;
  };

  mpq_class rhs = 0;
  const mpq_class gamma_weight(1, static_cast<unsigned long>(gammas.size()));
  for (const auto& [alpha, wa] : differences(xs.size())) {
    const auto x_bases = bases(alpha);
    for (const auto& [beta, wb] : differences(ys.size())) {
      if (!bilinear(alpha, q.a, xs, ys, beta).is_zero()) continue;
      std::vector<Scalar> u(zs.size());  // αᵀA[X,Z]
      std::vector<Scalar> v(zs.size());  // βᵀA[Y,Z]
      for (std::size_t j = 0; j < zs.size(); ++j) {
        for (std::size_t i = 0; i < xs.size(); ++i) u[j] += alpha[i] * q.a(xs[i], zs[j]);
        for (std::size_t i = 0; i < ys.size(); ++i) v[j] += beta[i] * q.a(ys[i], zs[j]);
      }
      const auto y_bases = bases(beta);
      std::uint64_t best = 0;
      for (const auto& xb : x_bases) {
        const auto xi_x = sum(xb, alpha);
        const Scalar p0 = phi0(xs, xi_x, xb);
        for (const auto& yb : y_bases) {
          const auto xi_y = sum(yb, beta);
          const Scalar phi1 = Scalar() - bilinear(alpha, q.a, xs, ys, yb) - p0 * half;
          const Scalar psi1 = Scalar() - bilinear(beta, q.a, ys, xs, xi_x) - phi0(ys, xi_y, yb) * half;
          std::uint64_t hits = 0;
          for (const auto& g : gammas) {
            Scalar lu;
            Scalar lv;
            for (std::size_t j = 0; j < zs.size(); ++j) {
              lu += u[j] * g[j];
              lv += v[j] * g[j];
            }
            hits += lu == phi1 && lv == psi1;
          }
          best = std::max(best, hits);
        }
      }
      rhs += wa * wb * gamma_weight * mpq_class(static_cast<unsigned long>(best));
    }
  }
  return report(lhs, rhs, 4);
}

}  // namespace polylo
