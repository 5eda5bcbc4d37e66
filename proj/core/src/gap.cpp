#include "polylo/gap.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <unordered_set>

#include "polylo/errors.hpp"

namespace polylo {

namespace {

struct VecLess {
  bool operator()(const Vec& a, const Vec& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), CanonicalLess{});
  }
};

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec scaled(const Vec& v, const Scalar& c) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * c;
  return out;
}

// v or −v, whichever has its first nonzero coordinate above 0 in (re, im) order.
Vec normalize_sign(Vec v) {
  for (const auto& x : v) {
    if (x.is_zero()) continue;
    if (CanonicalLess{}(x, Scalar())) v = scaled(v, Scalar(-1));
    break;
  }
  return v;
}

// Integer a with u = a·v, if any.
std::optional<std::uint64_t> abs_multiple(const Vec& u, const Vec& v) {
  std::size_t k = 0;
  while (k < v.size() && v[k].is_zero()) ++k;
  if (k == v.size()) return is_zero(u) ? std::optional<std::uint64_t>(0) : std::nullopt;
  const Scalar a = u[k] / v[k];
  if (!a.is_real() || a.re().get_den() != 1 || !a.re().get_num().fits_slong_p()) return std::nullopt;
  if (scaled(v, a) != u) return std::nullopt;
  return static_cast<std::uint64_t>(std::abs(a.re().get_num().get_si()));
}

std::size_t ambient_dim(const std::vector<Vec>& values) {
  const std::size_t k = values.empty() ? 0 : values[0].size();
  for (const auto& v : values) {
    if (v.size() != k) throw DimensionError("gap: values have different ambient dimensions");
  }
  return k;
}


// Gaussian-rational vectors as rational vectors of twice the length.
using Real = std::vector<mpq_class>;
using Rep = std::pair<std::uint64_t, std::uint64_t>;
constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

Real realify(const Vec& v) {
  Real out;
  out.reserve(2 * v.size());
  for (const auto& x : v) {
    out.push_back(x.re());
    out.push_back(x.im());
  }
  return out;
}

bool is_integer(const mpq_class& x) { return x.get_den() == 1; }

// All integer (a₁, a₂) with a₁v₁ + a₂v₂ = u and |a₁|, |a₂| ≤ amax.
class PairSolver {
 public:
  PairSolver(const Real& v1, const Real& v2) : v1_(v1), v2_(v2) {
    while (v1_[pivot_] == 0) ++pivot_;
    lambda_ = v2_[pivot_] / v1_[pivot_];
    bool dependent = true;
    for (std::size_t c = 0; c < v1_.size() && dependent; ++c) dependent = v2_[c] == lambda_ * v1_[c];
    if (dependent) return;
    independent_ = true;
    for (c1_ = 0; c1_ < v1_.size(); ++c1_) {
      for (c2_ = c1_ + 1; c2_ < v1_.size(); ++c2_) {
        det_ = v1_[c1_] * v2_[c2_] - v1_[c2_] * v2_[c1_];
        if (det_ != 0) return;
      }
    }
  }

  template <class F>
  void solve(const Real& u, std::int64_t amax, F&& emit) const {
    if (independent_) {
      const mpq_class a1 = (u[c1_] * v2_[c2_] - u[c2_] * v2_[c1_]) / det_;
      const mpq_class a2 = (v1_[c1_] * u[c2_] - v1_[c2_] * u[c1_]) / det_;
      if (!is_integer(a1) || !is_integer(a2)) return;
      if (abs(a1) > amax || abs(a2) > amax) return;
      for (std::size_t c = 0; c < u.size(); ++c) {
        if (a1 * v1_[c] + a2 * v2_[c] != u[c]) return;
      }
      emit(a1.get_num().get_si(), a2.get_num().get_si());
      return;
    }
    // v₂ = (p/q)·v₁ and u = μ·v₁, so q·a₁ + p·a₂ = q·μ.
    const mpq_class mu = u[pivot_] / v1_[pivot_];
    for (std::size_t c = 0; c < u.size(); ++c) {
      if (u[c] != mu * v1_[c]) return;
    }
    const mpz_class p = lambda_.get_num();
    const mpz_class q = lambda_.get_den();
    const mpq_class qm = mu * q;
    if (!is_integer(qm)) return;
    const mpz_class m = qm.get_num();
    mpz_class g;
    mpz_class s;
    mpz_class t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    // General solution a₁ = s·m + p·k, a₂ = t·m − q·k.
    const mpz_class a1 = s * m;
    const mpz_class a2 = t * m;
    const mpz_class lim = amax;
    mpz_class lo;
    mpz_class hi;
    mpz_class x;
    // |a₂ − q·k| ≤ amax
    x = a2 - lim;
    mpz_cdiv_q(lo.get_mpz_t(), x.get_mpz_t(), q.get_mpz_t());
    x = a2 + lim;
    mpz_fdiv_q(hi.get_mpz_t(), x.get_mpz_t(), q.get_mpz_t());
    // |a₁ + p·k| ≤ amax
    mpz_class lo1;
    mpz_class hi1;
    const mpz_class pa = abs(p);
    x = sgn(p) > 0 ? mpz_class(-lim - a1) : mpz_class(a1 - lim);
    mpz_cdiv_q(lo1.get_mpz_t(), x.get_mpz_t(), pa.get_mpz_t());
    x = sgn(p) > 0 ? mpz_class(lim - a1) : mpz_class(a1 + lim);
    mpz_fdiv_q(hi1.get_mpz_t(), x.get_mpz_t(), pa.get_mpz_t());
    if (lo1 > lo) lo = lo1;
    if (hi1 < hi) hi = hi1;
    if (lo > hi) return;
    const mpz_class start1 = a1 + p * lo;
    const mpz_class start2 = a2 - q * lo;
    std::int64_t b1 = start1.get_si();
    std::int64_t b2 = start2.get_si();
    const mpz_class count = hi - lo;
    const std::int64_t dp = count > 0 ? p.get_si() : 0;
    const std::int64_t dq = count > 0 ? q.get_si() : 0;
    for (std::int64_t k = 0;; ++k) {
      emit(b1, b2);
      if (count <= k) break;
      b1 += dp;
      b2 -= dq;
    }
  }

 private:
  Real v1_;
  Real v2_;
  std::size_t pivot_ = 0;
  mpq_class lambda_;
  bool independent_ = false;
  std::size_t c1_ = 0;
  std::size_t c2_ = 0;
  mpq_class det_;
};

}  // namespace

mpz_class gap_volume(const SymmetricGAP& g) {
  mpz_class v = 1;
  for (auto n : g.bounds) v *= 2 * mpz_class(static_cast<unsigned long>(n)) + 1;
  return v;
}

bool gap_contains(const SymmetricGAP& g, const Vec& u, std::uint64_t cap) {
  if (g.generators.size() != g.bounds.size()) throw DimensionError("gap: one bound per generator");
  for (const auto& v : g.generators) {
    if (v.size() != u.size()) throw DimensionError("gap: generator and vector dimensions differ");
  }
  if (gap_volume(g) > mpz_class(static_cast<unsigned long>(cap))) throw CapExceeded("gap_contains: volume exceeds the cap");
  const std::size_t r = g.rank();
  std::vector<long> a(r);
  for (std::size_t i = 0; i < r; ++i) a[i] = -static_cast<long>(g.bounds[i]);
  for (;;) {
    Vec s(u.size());
    for (std::size_t i = 0; i < r; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t c = 0; c < u.size(); ++c) s[c] += Scalar(a[i]) * g.generators[i][c];
    }
    if (s == u) return true;
    std::size_t i = 0;
    while (i < r && a[i] == static_cast<long>(g.bounds[i])) {
      a[i] = -static_cast<long>(g.bounds[i]);
      ++i;
    }
    if (i == r) return false;
    ++a[i];
  }
}

std::vector<Vec> cover_candidates(const CoverQuery& query) {
  ambient_dim(query.values);
  std::vector<Vec> base;
  const auto& vals = query.values;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!is_zero(vals[i])) base.push_back(vals[i]);
    for (std::size_t j = i + 1; j < vals.size(); ++j) {
      Vec d(vals[i].size());
      for (std::size_t c = 0; c < d.size(); ++c) d[c] = vals[i][c] - vals[j][c];
      if (!is_zero(d)) base.push_back(std::move(d));
    }
  }
  std::set<Vec, VecLess> out;
  for (const auto& w : base) {
    for (std::uint64_t q = 1; q <= query.generator_bound; ++q) {
      out.insert(normalize_sign(scaled(w, Scalar(mpq_class(1, static_cast<unsigned long>(q))))));
    }
  }
  return {out.begin(), out.end()};
}

std::optional<CoverResult> minimal_cover(const CoverQuery& query) {
  if (query.max_rank > 2) throw DomainError("minimal_cover: complete search supports rank ≤ 2 only");
  const auto& vals = query.values;
  const std::size_t n = vals.size();
  if (query.outliers_allowed > n) throw DomainError("minimal_cover: more outliers than values");
  ambient_dim(vals);
  const std::size_t need = n - query.outliers_allowed;

  auto finish = [&](SymmetricGAP g, const std::vector<bool>& in) {
    CoverResult r;
    r.gap = std::move(g);
    r.volume = gap_volume(r.gap);
    for (std::size_t j = 0; j < n; ++j) (in[j] ? r.covered : r.outliers).push_back(j);
    return r;
  };

  std::vector<bool> zero(n);
  for (std::size_t j = 0; j < n; ++j) zero[j] = is_zero(vals[j]);
  if (static_cast<std::size_t>(std::count(zero.begin(), zero.end(), true)) >= need) {
    return finish(SymmetricGAP{}, zero);
  }
  if (query.max_rank == 0) return std::nullopt;
  const auto cand = cover_candidates(query);
  if (cand.empty()) throw DomainError("minimal_cover: empty generator search space");

  std::optional<CoverResult> best;
  std::uint64_t best_volume = query.volume_cap + 1;  // strictly below this improves

  // Rank 1.
  for (const auto& v : cand) {
    std::vector<std::uint64_t> need_abs;
    std::vector<std::optional<std::uint64_t>> mult(n);
    for (std::size_t j = 0; j < n; ++j) {
      mult[j] = abs_multiple(vals[j], v);
      if (mult[j]) need_abs.push_back(*mult[j]);
    }
    if (need_abs.size() < need) continue;
    std::sort(need_abs.begin(), need_abs.end());
    const std::uint64_t bound = need == 0 ? 0 : need_abs[need - 1];
    const std::uint64_t volume = 2 * bound + 1;
    if (volume >= best_volume) continue;
    std::vector<bool> in(n);
    for (std::size_t j = 0; j < n; ++j) in[j] = mult[j] && *mult[j] <= bound;
    best = finish(SymmetricGAP{{v}, {bound}}, in);
    best_volume = volume;
  }
  if (query.max_rank < 2) return best;

  // Rank 2 with both bounds ≥ 1 (otherwise it is a rank-1 GAP).
  std::vector<Real> real_vals;
  for (const auto& u : vals) real_vals.push_back(realify(u));
  std::vector<Real> real_cand;
  for (const auto& v : cand) real_cand.push_back(realify(v));
  for (std::size_t p = 0; p < cand.size(); ++p) {
    for (std::size_t q = p + 1; q < cand.size(); ++q) {
      const std::uint64_t limit = best_volume - 1;  // largest admissible volume
      if (limit < 9) return best;
      const PairSolver solver(real_cand[p], real_cand[q]);
      const auto amax = static_cast<std::int64_t>((limit / 3 - 1) / 2);
      std::vector<std::vector<Rep>> reps(n);
      for (std::size_t j = 0; j < n; ++j) {
        solver.solve(real_vals[j], amax, [&](std::int64_t a1, std::int64_t a2) {
          const std::uint64_t x = std::abs(a1);
          const std::uint64_t y = std::abs(a2);
          if ((2 * std::max<std::uint64_t>(x, 1) + 1) * (2 * std::max<std::uint64_t>(y, 1) + 1) <= limit) {
            reps[j].push_back({x, y});
          }
        });
        std::sort(reps[j].begin(), reps[j].end());
      }
      // For each N₁, the smallest N₂ covering enough values.
      std::uint64_t found_volume = 0;
      std::pair<std::uint64_t, std::uint64_t> found{};
      std::vector<std::uint64_t> min_y(n, kNone);
      std::vector<std::size_t> ptr(n, 0);
      for (std::uint64_t n1 = 1; 3 * (2 * n1 + 1) <= limit; ++n1) {
        for (std::size_t j = 0; j < n; ++j) {
          while (ptr[j] < reps[j].size() && reps[j][ptr[j]].first <= n1) {
            min_y[j] = std::min(min_y[j], std::max<std::uint64_t>(reps[j][ptr[j]].second, 1));
            ++ptr[j];
          }
        }
        auto sorted = min_y;
        std::sort(sorted.begin(), sorted.end());
        const std::uint64_t n2 = need == 0 ? 1 : sorted[need - 1];
        if (n2 == kNone) continue;
        const std::uint64_t volume = (2 * n1 + 1) * (2 * n2 + 1);
        if (volume <= limit && (found_volume == 0 || volume < found_volume)) {
          found_volume = volume;
          found = {n1, n2};
        }
      }
      if (found_volume == 0) continue;
      std::vector<bool> in(n);
      for (std::size_t j = 0; j < n; ++j) {
        in[j] = std::any_of(reps[j].begin(), reps[j].end(),
                            [&](const Rep& e) { return e.first <= found.first && e.second <= found.second; });
      }
      best = finish(SymmetricGAP{{cand[p], cand[q]}, {found.first, found.second}}, in);
      best_volume = found_volume;
    }
  }
  return best;
}

namespace {

// Calls f(N) for every tuple of nonnegative bounds with ∏(2Nᵢ+1) ≤ v.
template <class F>
void for_each_bounds(std::size_t r, std::uint64_t v, std::vector<std::uint64_t>& prefix, F&& f) {
  if (prefix.size() == r) {
    f(prefix);
    return;
  }
  for (std::uint64_t n = 0; 2 * n + 1 <= v; ++n) {
    prefix.push_back(n);
    for_each_bounds(r, v / (2 * n + 1), prefix, f);
    prefix.pop_back();
  }
}

}  // namespace

mpz_class count_Z_V(std::size_t r, std::size_t m, std::uint64_t v) {
  if (v == 0) return 0;
  mpz_class total = 0;
  std::vector<std::uint64_t> prefix;
  for_each_bounds(r, v, prefix, [&](const std::vector<std::uint64_t>& bounds) {
    // Rows whose largest |entry| is exactly Nᵢ.
    mpz_class c = 1;
    for (auto b : bounds) {
      mpz_class outer;
      mpz_class inner;
      mpz_ui_pow_ui(outer.get_mpz_t(), 2 * b + 1, m);
      if (b == 0) {
        inner = 0;
      } else {
        mpz_ui_pow_ui(inner.get_mpz_t(), 2 * b - 1, m);
      }
      c *= outer - inner;
    }
    total += c;
  });
  return total;
}

std::uint64_t enumerate_Z_V(std::size_t r, std::size_t m, std::uint64_t v, std::uint64_t cap) {
  if (v == 0) return 0;
  std::unordered_set<std::string> seen;
  std::uint64_t work = 0;
  std::vector<std::uint64_t> prefix;
  for_each_bounds(r, v, prefix, [&](const std::vector<std::uint64_t>& bounds) {
    const std::size_t cells = r * m;
    std::vector<long> z(cells);
    for (std::size_t c = 0; c < cells; ++c) z[c] = -static_cast<long>(bounds[c / m]);
    for (;;) {
      if (++work > cap) throw CapExceeded("enumerate_Z_V: too many matrices");
      std::string key;
      key.reserve(cells * sizeof(long));
      for (auto x : z) key.append(reinterpret_cast<const char*>(&x), sizeof(long));
      seen.insert(std::move(key));
      std::size_t c = 0;
      while (c < cells && z[c] == static_cast<long>(bounds[c / m])) {
        z[c] = -static_cast<long>(bounds[c / m]);
        ++c;
      }
      if (c == cells) break;
      ++z[c];
    }
  });
  return seen.size();
}

}  // namespace polylo
