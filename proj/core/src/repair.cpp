#include "polylo/repair.hpp"

#include <algorithm>
#include <numeric>

#include "polylo/combinatorics.hpp"
#include "polylo/errors.hpp"
#include "polylo/minor_oracle.hpp"
#include "polylo/random.hpp"
#include "polylo/stats.hpp"
#include "polylo/submatrix.hpp"

namespace polylo {

namespace {

mpq_class ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return 0;
  mpq_class q(mpz_class(static_cast<unsigned long>(num)), mpz_class(static_cast<unsigned long>(den)));
  q.canonicalize();
  return q;
}

// Nonsingular k×k fraction: exact under the cap, otherwise a sampled point
// estimate (flagged through `exact`).
mpq_class nonsingular_fraction(const MinorOracle& o, std::size_t k, const RepairOptions& opt, bool& exact) {
  const Matrix& m = o.matrix();
  if (submatrix_count(m.rows(), m.cols(), k) <= opt.cap) return nonsingular_fraction_exact(o, k, opt.cap);
  exact = false;
  FractionOptions f;
  f.mode = CountMode::sampled;
  f.samples = opt.samples;
  f.seed = opt.seed + k;
  return singular_fraction(o, k, f).nonsingular_fraction();
}

IndexSet with(const IndexSet& base, std::size_t extra) {
  IndexSet out = base;
  out.push_back(extra);
  return out;
}

template <class T>
RepairOutcome<T> finish(const T& input, T output, std::vector<RepairWitness> witness) {
  RepairOutcome<T> out;
  std::uint64_t changed = 0;
  for (std::size_t k = 0; k < input.entries().size(); ++k) {
    if (input.entries()[k] != output.entries()[k]) ++changed;
  }
  out.changed_entries = changed;
  out.changed_fraction = ratio(changed, input.entries().size());
  out.output = std::move(output);
  out.witness = std::move(witness);
  return out;
}

// floor(sqrt(x)) for rational x ≥ 0.
std::size_t isqrt_floor(const mpq_class& x) {
  mpz_class f = x.get_num() / x.get_den();
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), f.get_mpz_t());
  return s.fits_ulong_p() ? s.get_ui() : SIZE_MAX;
}

}  // namespace

MatrixRepair low_rank_approx(const Matrix& a, std::size_t r, const RepairOptions& options) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  if (r == 0 || r > std::min(n, m)) throw DimensionError("low_rank_approx: need 1 ≤ r ≤ min(n, m)");
  const MinorOracle o(a);
  RepairWitness w;
  w.stage = "low_rank_approx";
  bool exact = true;
  const mpq_class alpha = nonsingular_fraction(o, r, options, exact);
  w.alpha = alpha;

  // Minimal k with frac_k ≤ α^{k/r}, compared as frac_k^r ≤ α^k.
  std::size_t k = r;
  for (std::size_t t = 1; t <= r; ++t) {
    const mpq_class f = t == r ? alpha : nonsingular_fraction(o, t, options, exact);
    if (pow(f, static_cast<unsigned>(r)) <= pow(alpha, static_cast<unsigned>(t))) {
      k = t;
      break;
    }
  }
  w.alpha_exact = exact;
  w.k = k;
  if (k == 1) {
    w.change_bound = mpq_class(static_cast<unsigned long>(count_nonzero(a)));
    return finish(a, Matrix(n, m), {w});
  }

  const std::size_t s = k - 1;
  const std::uint64_t ext_per_pair = static_cast<std::uint64_t>(n - s) * (m - s);
  const std::uint64_t pairs = submatrix_count(n, m, s);
  const bool exhaustive = pairs <= options.cap / std::max<std::uint64_t>(ext_per_pair, 1);
  // Non-exhaustive mode accepts the first pair with count ≤ α^{1/r}(n−s)(m−s),
  // i.e. count^r ≤ α·((n−s)(m−s))^r.
  const mpq_class bound_r = alpha * pow(mpq_class(static_cast<unsigned long>(ext_per_pair)), static_cast<unsigned>(r));
  auto within_bound = [&](std::uint64_t c) {
    return pow(mpq_class(static_cast<unsigned long>(c)), static_cast<unsigned>(r)) <= bound_r;
  };

  std::optional<std::pair<IndexSet, IndexSet>> best;
  std::uint64_t best_count = UINT64_MAX;
  for_each_combination(n, s, [&](const IndexSet& rows) {
    const IndexSet rest_rows = complement(rows, n);
    for_each_combination(m, s, [&](const IndexSet& cols) {
      if (!o.nonsingular(rows, cols)) return true;
      const IndexSet rest_cols = complement(cols, m);
      std::uint64_t count = 0;
      for (auto i : rest_rows) {
        const IndexSet ri = with(rows, i);
        for (auto j : rest_cols) {
          if (o.nonsingular(ri, with(cols, j))) ++count;
        }
        if (count >= best_count) break;
      }
      if (count < best_count) {
        best_count = count;
        best.emplace(rows, cols);
      }
      return exhaustive || !within_bound(best_count);
    });
    return exhaustive || !best || !within_bound(best_count);
  });
  if (!best) throw ConstructionError("low_rank_approx: no nonsingular (k−1)×(k−1) submatrix");
  const auto& [rows, cols] = *best;
  w.rows = rows;
  w.cols = cols;
  w.extensions = best_count;
  w.exhaustive = exhaustive;
  w.change_bound = mpq_class(static_cast<unsigned long>(best_count));

  // Row i of B is the vector in the row space of A[I,:] agreeing with A on J.
  const Matrix b = submatrix(a, all_indices(n), cols) * inverse(submatrix(a, rows, cols)) *
                   submatrix(a, rows, all_indices(m));
  return finish(a, b, {w});
}

RobustSubmatrix robust_principal_submatrix_budget(const Matrix& a, std::size_t q, const mpq_class& gamma_n_squared,
                                                  std::uint64_t cap) {
  if (!a.is_square()) throw DimensionError("robust_principal_submatrix: matrix must be square");
  if (gamma_n_squared < 0) throw DomainError("robust_principal_submatrix: negative budget");
  if (rank(a) > q) throw DomainError("robust_principal_submatrix: rank exceeds q");
  const std::size_t n = a.rows();
  const MinorOracle o(a);
  std::uint64_t evals = 0;
  auto low_rank_after_removing = [&](std::size_t t, std::size_t k) -> std::optional<IndexSet> {
    std::optional<IndexSet> found;
    for_each_combination(n, t, [&](const IndexSet& removed) {
      if (++evals > cap) throw CapExceeded("robust_principal_submatrix: search exceeds the cap");
      IndexSet keep = complement(removed, n);
      if (o.rank(keep, keep) <= k) found = std::move(keep);
      return !found;
    });
    return found;
  };
  for (std::size_t k = 0; k <= q; ++k) {
    const mpq_class scaled = mpq_class(static_cast<unsigned long>((q - k) * (q - k))) * gamma_n_squared;
    const std::size_t t_max = std::min(isqrt_floor(scaled), n);
    // rank(A[I,I]) only drops as I shrinks, so feasibility is decided at t_max;
    // the smallest working removal gives the largest witness.
    if (!low_rank_after_removing(t_max, k)) continue;
    for (std::size_t t = 0; t <= t_max; ++t) {
      if (auto keep = low_rank_after_removing(t, k)) return {k, std::move(*keep)};
    }
  }
  throw ConstructionError("robust_principal_submatrix: no k ≤ q found");
}

RobustSubmatrix robust_principal_submatrix(const Matrix& a, std::size_t q, const mpq_class& gamma) {
  if (gamma < 0) throw DomainError("robust_principal_submatrix: gamma must be nonnegative");
  const mpq_class gn = gamma * static_cast<unsigned long>(a.rows());
  return robust_principal_submatrix_budget(a, q, gn * gn);
}

bool verify_robust_rank(const Matrix& a, const IndexSet& indices, std::size_t k, const mpq_class& gamma_n_squared) {
  const MinorOracle o(a);
  const std::size_t t_max = std::min(isqrt_floor(gamma_n_squared), indices.size());
  for (std::size_t t = 0; t <= t_max; ++t) {
    bool ok = true;
    for_each_combination(indices.size(), t, [&](const IndexSet& removed) {
      IndexSet keep;
      std::size_t p = 0;
      for (std::size_t u = 0; u < indices.size(); ++u) {
        if (p < removed.size() && removed[p] == u) {
          ++p;
          continue;
        }
        keep.push_back(indices[u]);
      }
      ok = o.rank(keep, keep) == k;
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

Matrix symmetrize_robust(const Matrix& a, std::size_t r, RepairWitness* witness) {
  if (!a.is_square()) throw DimensionError("symmetrize_robust: matrix must be square");
  const std::size_t n = a.rows();
  if (rank(a) != r) throw DomainError("symmetrize_robust: rank(A) must equal r");
  if (r == 0) return Matrix(n, n);

  std::vector<IndexSet> bad(n);
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) != a(j, i)) {
        bad[i].push_back(j);
        ++c;
      }
    }
  }
  // I_bad: |N(i)| ≥ √ρ·n, i.e. |N(i)|² ≥ ‖A − Aᵀ‖₀. Rows with no bad pair
  // never count, which only matters when A is already symmetric.
  std::vector<bool> excluded(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (!bad[i].empty() && bad[i].size() * bad[i].size() >= c) excluded[i] = true;
  }

  const MinorOracle o(a);
  const IndexSet all = all_indices(n);
  IndexSet v;
  for (std::size_t step = 0; step < r; ++step) {
    if (!v.empty()) {
      for (auto j : bad[v.back()]) excluded[j] = true;
    }
    bool grown = false;
    for (std::size_t cand = 0; cand < n && !grown; ++cand) {
      if (excluded[cand]) continue;
      IndexSet next = with(v, cand);
      if (o.rank(all, next) == step + 1) {
        v = std::move(next);
        grown = true;
      }
    }
    if (!grown) {
      throw ConstructionError("symmetrize_robust: step " + std::to_string(step + 1) +
                              " found no admissible column raising the rank (robustness hypothesis fails)");
    }
  }
  if (!o.nonsingular(v, v)) throw ConstructionError("symmetrize_robust: A[V,V] is singular");
  if (witness) {
    witness->basis = v;
    witness->asymmetric_entries = c;
  }
  const Matrix av = submatrix(a, v, all);
  return av.transpose() * inverse(submatrix(a, v, v)) * av;
}

MatrixRepair fix_symmetry(const Matrix& input, std::size_t q, const RepairOptions& options) {
  if (!input.is_square()) throw DimensionError("fix_symmetry: matrix must be square");
  const std::size_t n = input.rows();
  if (rank(input) > q) throw DomainError("fix_symmetry: rank exceeds q");
  RepairWitness w;
  w.stage = "fix_symmetry";
  const std::uint64_t c = hamming_distance(input, input.transpose());
  w.asymmetric_entries = c;
  const mpq_class q2(static_cast<unsigned long>(q * q));
  w.change_bound = (q2 * q2 + q2 + 2) * static_cast<unsigned long>(c);
  if (q == 0) return finish(input, Matrix(n, n), {w});

  // γ = q√ρ with ρ = c/n², so (γn)² = q²c.
  const RobustSubmatrix robust = robust_principal_submatrix_budget(input, q, q2 * static_cast<unsigned long>(c), options.cap);
  const std::size_t k = robust.k;
  const IndexSet& in = robust.indices;
  const IndexSet out = complement(in, n);
  const IndexSet all = all_indices(n);
  w.k = k;
  w.rows = in;

  const MinorOracle o(input);
  const std::size_t delta1 = o.rank(all, in) - k;
  const std::size_t delta2 = o.rank(in, all) - k;
  const Matrix a = delta1 > delta2 ? input.transpose() : input;
  w.transposed = delta1 > delta2;

  RepairWitness inner;
  const Matrix c_block = symmetrize_robust(submatrix(a, in, in), k, &inner);
  for (auto local : inner.basis) w.basis.push_back(in[local]);

  Matrix b(n, n);
  for (std::size_t x = 0; x < in.size(); ++x) {
    for (std::size_t y = 0; y < in.size(); ++y) b(in[x], in[y]) = c_block(x, y);
  }
  if (!out.empty()) {
    // A[Iᶜ,I] = P·C + Q: a basis starting with independent rows of C and
    // extended greedily by rows of A[Iᶜ,I]; each row is solved against it.
    const Matrix x = submatrix(a, out, in);
    const IndexSet c_rows = independent_rows(c_block);
    Matrix stacked(c_rows.size() + out.size(), in.size());
    for (std::size_t t = 0; t < c_rows.size(); ++t) {
      for (std::size_t j = 0; j < in.size(); ++j) stacked(t, j) = c_block(c_rows[t], j);
    }
    for (std::size_t t = 0; t < out.size(); ++t) {
      for (std::size_t j = 0; j < in.size(); ++j) stacked(c_rows.size() + t, j) = x(t, j);
    }
    const IndexSet basis_rows = independent_rows(stacked);
    const Matrix basis = submatrix(stacked, basis_rows, all_indices(in.size()));
    const Matrix coef = solve(basis.transpose(), x.transpose()).transpose();  // |Iᶜ| × basis

    Matrix p(out.size(), in.size());
    const std::size_t kc = c_rows.size();
    for (std::size_t t = 0; t < out.size(); ++t) {
      for (std::size_t u = 0; u < kc; ++u) p(t, c_rows[u]) = coef(t, u);
    }
    Matrix ext_coef(out.size(), basis_rows.size() - kc);
    for (std::size_t t = 0; t < out.size(); ++t) {
      for (std::size_t u = kc; u < basis_rows.size(); ++u) ext_coef(t, u - kc) = coef(t, u);
    }
    const Matrix ext = submatrix(basis, [&] {
      IndexSet idx;
      for (std::size_t u = kc; u < basis_rows.size(); ++u) idx.push_back(u);
      return idx;
    }(), all_indices(in.size()));
    const Matrix qm = ext_coef * ext;

    const Matrix side = p * c_block + qm;
    const Matrix corner = p * c_block * p.transpose() + p * qm.transpose() + qm * p.transpose();
    for (std::size_t t = 0; t < out.size(); ++t) {
      for (std::size_t y = 0; y < in.size(); ++y) {
        b(out[t], in[y]) = side(t, y);
        b(in[y], out[t]) = side(t, y);
      }
      for (std::size_t u = 0; u < out.size(); ++u) b(out[t], out[u]) = corner(t, u);
    }
  }
  if (!b.is_symmetric() || rank(b) > q) {
    throw ConstructionError("fix_symmetry: assembled matrix violates symmetry or rank");
  }
  return finish(input, std::move(b), {w});
}

MatrixRepair symmetric_low_rank_repair(const Matrix& a, std::size_t r, const RepairOptions& options) {
  if (!a.is_symmetric()) throw DomainError("symmetric_low_rank_repair: input must be symmetric");
  MatrixRepair first = low_rank_approx(a, r, options);
  MatrixRepair second = fix_symmetry(first.output, r - 1, options);
  std::vector<RepairWitness> witness = first.witness;
  witness.insert(witness.end(), second.witness.begin(), second.witness.end());
  if (first.witness.front().change_bound && second.witness.front().change_bound) {
    RepairWitness total;
    total.stage = "symmetric_low_rank_repair";
    total.alpha = first.witness.front().alpha;
    total.alpha_exact = first.witness.front().alpha_exact;
    total.change_bound = mpq_class(static_cast<unsigned long>(first.changed_entries)) +
                         *second.witness.front().change_bound;
    witness.insert(witness.begin(), total);
  }
  return finish(a, std::move(second.output), std::move(witness));
}

namespace {

// Product of the per-axis index sets, as flat cells of the full tensor.
void cells_of(const Tensor& t, const std::vector<IndexSet>& sets, std::vector<std::size_t>& out) {
  out.clear();
  std::vector<std::size_t> idx(sets.size(), 0);
  const std::size_t d = sets.size();
  for (;;) {
    std::size_t f = 0;
    for (std::size_t a = 0; a < d; ++a) f = f * t.dims()[a] + sets[a][idx[a]];
    out.push_back(f);
    std::size_t a = d;
    while (a > 0) {
      --a;
      if (++idx[a] < sets[a].size()) break;
      idx[a] = 0;
      if (a == 0) return;
    }
  }
}

}  // namespace

std::optional<TensorRepair> tensor_repair(const Tensor& t, const mpq_class& eps, std::uint64_t seed,
                                          const TensorRepairOptions& options,
                                          std::vector<RepairWitness>* diagnostics) {
  const std::size_t d = t.order();
  if (d < 2) throw DomainError("tensor_repair: needs d ≥ 2");
  if (eps <= 0 || eps > 1) throw DomainError("tensor_repair: eps must lie in (0, 1]");
  const std::size_t side = std::size_t{1} << (d - 1);
  const unsigned ell = static_cast<unsigned>(side - 1);
  const mpq_class half = eps / 2;  // δ^{1/(ℓ+1)}
  const mpq_class anchor_threshold = pow(half, ell);  // δ^{ℓ/(ℓ+1)}
  std::vector<RepairWitness> diag;

  // Stage 1: few nonzero entries → zero tensor.
  std::vector<std::size_t> anchors;
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (!t[f].is_zero()) anchors.push_back(f);
  }
  RepairWitness w;
  w.stage = "tensor_repair";
  if (ratio(anchors.size(), t.size()) <= half) {
    w.notes.push_back("nonzero fraction at most eps/2; output is the zero tensor");
    if (diagnostics) *diagnostics = {w};
    return finish(t, Tensor(t.dims()), {w});
  }

  const ReducibilityProbe probe(t);
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(anchors));

  // Stage 2: irreducible fraction of side-2^{d−1} subtensors through each anchor.
  std::vector<mpq_class> frac(t.size(), 0);
  const bool vacuous = std::any_of(t.dims().begin(), t.dims().end(), [&](std::size_t n) { return n < side; });
  std::uint64_t total = 1;
  std::uint64_t through = 1;
  for (auto n : t.dims()) {
    total = total > options.cap ? total : total * binomial(n, side);
    through *= vacuous ? 1 : binomial(n - 1, side - 1);
  }
  if (vacuous) {
    w.notes.push_back("a side is shorter than 2^(d-1); anchored test is vacuous");
  } else if (total <= options.cap) {
    std::vector<std::uint64_t> bad(t.size(), 0);
    std::vector<IndexSet> sets(d);
    std::vector<std::size_t> cells;
    // Odometer over per-axis combinations.
    for (std::size_t a = 0; a < d; ++a) sets[a] = first_combination(side);
    for (;;) {
      if (!probe.reducible(sets)) {
        cells_of(t, sets, cells);
        for (auto f : cells) ++bad[f];
      }
      std::size_t a = d;
      bool more = false;
      while (a > 0) {
        --a;
        if (next_combination(sets[a], t.dims()[a])) {
          more = true;
          break;
        }
        sets[a] = first_combination(side);
      }
      if (!more) break;
    }
    for (auto f : anchors) frac[f] = ratio(bad[f], through);
  } else {
    w.notes.push_back("anchored fractions sampled");
    std::vector<IndexSet> sets(d);
    for (auto f : anchors) {
      const auto star = t.multi_index(f);
      std::uint64_t bad = 0;
      for (std::uint64_t s = 0; s < options.samples_per_anchor; ++s) {
        for (std::size_t a = 0; a < d; ++a) {
          auto others = rng.subset(t.dims()[a] - 1, side - 1);
          sets[a].assign(1, star[a]);
          for (auto o : others) sets[a].push_back(o >= star[a] ? o + 1 : o);
          std::sort(sets[a].begin(), sets[a].end());
        }
        if (!probe.reducible(sets)) ++bad;
      }
      frac[f] = ratio(bad, options.samples_per_anchor);
    }
  }
  // Anchors meeting the threshold keep their seeded order and go first; the
  // rest follow by increasing fraction.
  std::stable_sort(anchors.begin(), anchors.end(), [&](std::size_t x, std::size_t y) {
    const bool mx = frac[x] <= anchor_threshold;
    const bool my = frac[y] <= anchor_threshold;
    if (mx != my) return mx;
    if (mx) return false;
    return frac[x] < frac[y];
  });

  // Stage 3: a partition under which most anchored 2×…×2 subtensors reduce.
  const auto& parts = probe.partitions();
  std::uint64_t anchored = 1;
  for (auto n : t.dims()) anchored *= n - 1;
  std::size_t tried = 0;
  for (auto f : anchors) {
    ++tried;
    const auto star = t.multi_index(f);
    std::optional<std::size_t> best;
    mpq_class best_frac;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      std::uint64_t bad = 0;
      std::uint64_t count = 0;
      std::vector<IndexSet> sets(d);
      if (anchored > 0 && anchored <= options.anchored_cap) {
        std::vector<std::size_t> other(d, 0);
        for (;;) {
          bool valid = true;
          for (std::size_t a = 0; a < d; ++a) {
            if (other[a] == star[a]) valid = false;
          }
          if (valid) {
            for (std::size_t a = 0; a < d; ++a) sets[a] = {std::min(star[a], other[a]), std::max(star[a], other[a])};
            ++count;
            if (!probe.reducible_wrt(sets, parts[p])) ++bad;
          }
          std::size_t a = d;
          bool more = false;
          while (a > 0) {
            --a;
            if (++other[a] < t.dims()[a]) {
              more = true;
              break;
            }
            other[a] = 0;
          }
          if (!more) break;
        }
      } else if (anchored > 0) {
        for (std::uint64_t s = 0; s < options.samples_per_anchor; ++s) {
          for (std::size_t a = 0; a < d; ++a) {
            std::size_t o = rng.below(t.dims()[a] - 1);
            if (o >= star[a]) ++o;
            sets[a] = {std::min(star[a], o), std::max(star[a], o)};
          }
          ++count;
          if (!probe.reducible_wrt(sets, parts[p])) ++bad;
        }
      }
      const mpq_class pf = ratio(bad, count);
      if (!best || pf < best_frac) {
        best = p;
        best_frac = pf;
      }
    }
    if (!best || best_frac > half) continue;

    const AxisPartition& part = parts[*best];
    const Scalar inv = Scalar(1) / t[f];
    Tensor out(t.dims());
    for (std::size_t c = 0; c < t.size(); ++c) {
      auto left = t.multi_index(c);
      auto right = left;
      for (auto a : part.j2) left[a] = star[a];
      for (auto a : part.j1) right[a] = star[a];
      const Scalar& x = t.at(left);
      if (x.is_zero()) continue;
      out[c] = x * t.at(right) * inv;
    }
    if (!is_reducible_wrt(out, part)) throw ConstructionError("tensor_repair: reconstruction is not reducible");
    w.anchor = star;
    w.partition = part;
    w.anchored_fraction = frac[f];
    w.partition_fraction = best_frac;
    w.anchor_threshold_met = frac[f] <= anchor_threshold;
    w.notes.push_back("anchors tried: " + std::to_string(tried));
    if (diagnostics) *diagnostics = {w};
    return finish(t, std::move(out), {w});
  }
  w.notes.push_back("no anchor/partition pair passed the eps/2 test; anchors tried: " + std::to_string(tried));
  if (!anchors.empty()) {
    w.anchored_fraction = frac[anchors.front()];
    w.anchor_threshold_met = frac[anchors.front()] <= anchor_threshold;
  }
  diag.push_back(w);
  if (diagnostics) *diagnostics = std::move(diag);
  return std::nullopt;
}

}  // namespace polylo
