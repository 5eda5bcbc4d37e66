#include "polylo/anticoncentration.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <unordered_map>

#include "polylo/errors.hpp"
#include "polylo/random.hpp"

namespace polylo {

std::vector<std::pair<Scalar, mpq_class>> CoordinateLaw::support() const {
  switch (kind) {
    case CoordinateKind::rademacher:
      return {{Scalar(-1), mpq_class(1, 2)}, {Scalar(1), mpq_class(1, 2)}};
    case CoordinateKind::lazy:
      return {{Scalar(-1), mpq_class(1, 4)}, {Scalar(0), mpq_class(1, 2)}, {Scalar(1), mpq_class(1, 4)}};
    case CoordinateKind::shifted:
      return {{shift - Scalar(1), mpq_class(1, 2)}, {shift + Scalar(1), mpq_class(1, 2)}};
  }
  return {};
}

RandomModel RandomModel::shifted(const std::vector<Scalar>& shifts) {
  std::vector<CoordinateLaw> laws;
  laws.reserve(shifts.size());
  for (const auto& s : shifts) laws.push_back({CoordinateKind::shifted, s});
  return RandomModel({CoordinateKind::shifted, Scalar()}, std::move(laws));
}

std::string RandomModel::name() const {
  auto kind_name = [](CoordinateKind k) {
    switch (k) {
      case CoordinateKind::rademacher:
        return "rademacher";
      case CoordinateKind::lazy:
        return "lazy";
      case CoordinateKind::shifted:
        return "shifted";
    }
    return "";
  };
  for (const auto& l : per_) {
    if (l.kind != default_.kind) return "mixed";
  }
  return kind_name(default_.kind);
}

RandomModel parse_model(std::string_view name, const Scalar& shift) {
  if (name == "rademacher") return RandomModel::rademacher();
  if (name == "lazy") return RandomModel::lazy();
  if (name == "shifted") return RandomModel({CoordinateKind::shifted, shift});
  throw DomainError("unknown random model: " + std::string(name));
}

namespace {

// Every atom has a dyadic weight count / 2^exponent.
struct Atoms {
  std::vector<Scalar> values;
  std::vector<std::uint64_t> counts;
  unsigned exponent = 0;
};

Atoms atoms_of(const CoordinateLaw& law) {
  Atoms a;
  switch (law.kind) {
    case CoordinateKind::rademacher:
      a.values = {Scalar(-1), Scalar(1)};
      a.counts = {1, 1};
      a.exponent = 1;
      break;
    case CoordinateKind::lazy:
      a.values = {Scalar(-1), Scalar(0), Scalar(1)};
      a.counts = {1, 2, 1};
      a.exponent = 2;
      break;
    case CoordinateKind::shifted:
      a.values = {law.shift - Scalar(1), law.shift + Scalar(1)};
      a.counts = {1, 1};
      a.exponent = 1;
      break;
  }
  return a;
}

std::optional<std::int64_t> small_integer(const Scalar& s) {
  if (!s.is_real() || s.re().get_den() != 1 || !s.re().get_num().fits_slong_p()) return std::nullopt;
  return s.re().get_num().get_si();
}

mpq_class dyadic(std::uint64_t count, unsigned exponent) {
  mpz_class den = 1;
  den <<= exponent;
  mpq_class q(mpz_class(static_cast<unsigned long>(count)), den);
  q.canonicalize();
  return q;
}

const mpz_class kSafe = mpz_class(1) << 62;

// f restricted to its active variables, with an int64 image when the
// coefficients are real, the support values integers, and every partial
// evaluation stays below 2^62 in absolute value.
class Compiled {
 public:
  Compiled(const PolynomialSpec& f, const RandomModel& model) {
    vars_ = f.active_variables();
    std::vector<std::size_t> local(f.n_vars(), 0);
    for (std::size_t v = 0; v < vars_.size(); ++v) local[vars_[v]] = v;
    atoms_.reserve(vars_.size());
    for (auto v : vars_) atoms_.push_back(atoms_of(model.law(v)));
    max_exp_.assign(vars_.size(), 0);
    for (const auto& [mono, coef] : f.terms()) {
      Term t;
      t.coef = coef;
      for (const auto& [var, e] : mono) {
        t.factors.emplace_back(local[var], e);
        max_exp_[local[var]] = std::max(max_exp_[local[var]], e);
      }
      terms_.push_back(std::move(t));
    }
    build_integer_image();
  }

  std::size_t size() const { return vars_.size(); }
  const Atoms& atoms(std::size_t v) const { return atoms_[v]; }
  bool integral() const { return integral_; }
  const mpz_class& scale() const { return scale_; }

  std::int64_t eval_int(const std::vector<std::size_t>& digit) const {
    std::int64_t total = 0;
    for (const auto& t : terms_) {
      std::int64_t p = t.icoef;
      for (const auto& [v, e] : t.factors) p *= ipow_[v][digit[v]][e];
      total += p;
    }
    return total;
  }

  Scalar eval(const std::vector<std::size_t>& digit) const {
    Scalar total;
    for (const auto& t : terms_) {
      Scalar p = t.coef;
      for (const auto& [v, e] : t.factors) {
        for (unsigned k = 0; k < e; ++k) p *= atoms_[v].values[digit[v]];
      }
      total += p;
    }
    return total;
  }

  Scalar value_of(std::int64_t scaled) const {
    mpq_class q(mpz_class(static_cast<long>(scaled)), scale_);
    q.canonicalize();
    return Scalar(q);
  }

 private:
  struct Term {
    Scalar coef;
    std::int64_t icoef = 0;
    std::vector<std::pair<std::size_t, unsigned>> factors;
  };

  void build_integer_image() {
    integral_ = false;
    scale_ = 1;
    for (const auto& t : terms_) {
      if (!t.coef.is_real()) return;
      scale_ = lcm(scale_, t.coef.re().get_den());
    }
    std::vector<long> max_abs(vars_.size(), 0);
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      for (const auto& x : atoms_[v].values) {
        const auto i = small_integer(x);
        if (!i || *i > (1L << 20) || *i < -(1L << 20)) return;
        max_abs[v] = std::max(max_abs[v], std::abs(*i));
      }
    }
    mpz_class bound = 0;
    for (auto& t : terms_) {
      const mpz_class c = t.coef.re().get_num() * (scale_ / t.coef.re().get_den());
      if (abs(c) >= kSafe) return;
      mpz_class b = abs(c);
      for (const auto& [v, e] : t.factors) {
        for (unsigned k = 0; k < e; ++k) b *= max_abs[v];
      }
      if (b >= kSafe) return;
      bound += b;
      t.icoef = c.get_si();
    }
    if (bound >= kSafe) return;
    ipow_.resize(vars_.size());
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      ipow_[v].resize(atoms_[v].values.size());
      for (std::size_t d = 0; d < atoms_[v].values.size(); ++d) {
        const std::int64_t x = *small_integer(atoms_[v].values[d]);
        auto& row = ipow_[v][d];
        row.assign(max_exp_[v] + 1, 1);
        for (unsigned e = 1; e <= max_exp_[v]; ++e) row[e] = row[e - 1] * x;
      }
    }
    integral_ = true;
  }

  std::vector<std::size_t> vars_;
  std::vector<Atoms> atoms_;
  std::vector<unsigned> max_exp_;
  std::vector<Term> terms_;
  bool integral_ = false;
  mpz_class scale_ = 1;
  std::vector<std::vector<std::vector<std::int64_t>>> ipow_;
};

bool advance(std::vector<std::size_t>& digit, const std::vector<std::size_t>& radix) {
  for (std::size_t v = digit.size(); v-- > 0;) {
    if (++digit[v] < radix[v]) return true;
    digit[v] = 0;
  }
  return false;
}

// Draws an atom index with probability count / 2^exponent.
std::size_t draw(Rng& rng, const Atoms& a) {
  std::uint64_t u = rng.below(std::uint64_t{1} << a.exponent);
  for (std::size_t d = 0; d < a.counts.size(); ++d) {
    if (u < a.counts[d]) return d;
    u -= a.counts[d];
  }
  return a.counts.size() - 1;
}

}  // namespace

ValueDistribution exact_distribution(const PolynomialSpec& f, const RandomModel& model, std::uint64_t cap) {
  const Compiled c(f, model);
  std::uint64_t outcomes = 1;
  unsigned exponent = 0;
  std::vector<std::size_t> radix(c.size());
  for (std::size_t v = 0; v < c.size(); ++v) {
    radix[v] = c.atoms(v).values.size();
    if (outcomes > cap / radix[v]) throw CapExceeded("exact_distribution: outcome space exceeds the cap");
    outcomes *= radix[v];
    exponent += c.atoms(v).exponent;
  }
  if (exponent > 63) throw CapExceeded("exact_distribution: outcome space exceeds the cap");

  std::vector<std::size_t> digit(c.size(), 0);
  auto weight = [&] {
    std::uint64_t w = 1;
    for (std::size_t v = 0; v < c.size(); ++v) w *= c.atoms(v).counts[digit[v]];
    return w;
  };
  ValueDistribution dist;
  if (c.integral()) {
    std::unordered_map<std::int64_t, std::uint64_t> counts;
    do {
      counts[c.eval_int(digit)] += weight();
    } while (advance(digit, radix));
    for (const auto& [v, n] : counts) dist.emplace(c.value_of(v), dyadic(n, exponent));
  } else {
    std::unordered_map<Scalar, std::uint64_t> counts;
    do {
      counts[c.eval(digit)] += weight();
    } while (advance(digit, radix));
    for (const auto& [v, n] : counts) dist.emplace(v, dyadic(n, exponent));
  }
  return dist;
}

PointProbabilityReport argmax(const ValueDistribution& dist) {
  PointProbabilityReport r;
  bool first = true;
  for (const auto& [v, p] : dist) {
    if (first || p > r.probability) {
      r.z = v;
      r.probability = p;
      first = false;
    }
  }
  return r;
}

PointProbabilityReport max_point_probability(const PolynomialSpec& f, const RandomModel& model,
                                             std::uint64_t cap) {
  return argmax(exact_distribution(f, model, cap));
}

ValueDistribution linear_distribution(std::span<const Scalar> coeffs, const RandomModel& model, std::uint64_t cap) {
  // Integer keys when every a_i·x is an integer multiple of 1/L.
  mpz_class scale = 1;
  bool integral = true;
  mpz_class bound = 0;
  for (std::size_t i = 0; i < coeffs.size() && integral; ++i) {
    if (coeffs[i].is_zero()) continue;
    if (!coeffs[i].is_real()) {
      integral = false;
      break;
    }
    scale = lcm(scale, coeffs[i].re().get_den());
    for (const auto& x : atoms_of(model.law(i)).values) {
      if (!small_integer(x)) integral = false;
    }
  }
  std::vector<std::int64_t> icoef(coeffs.size(), 0);
  if (integral) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i].is_zero()) continue;
      const mpz_class c = coeffs[i].re().get_num() * (scale / coeffs[i].re().get_den());
      long m = 0;
      for (const auto& x : atoms_of(model.law(i)).values) m = std::max(m, std::abs(*small_integer(x)));
      bound += abs(c) * m;
      if (bound >= kSafe) {
        integral = false;
        break;
      }
      icoef[i] = c.get_si();
    }
  }

  unsigned exponent = 0;
  ValueDistribution out;
  if (integral) {
    std::unordered_map<std::int64_t, mpz_class> dist{{0, 1}};
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i].is_zero()) continue;
      const Atoms a = atoms_of(model.law(i));
      exponent += a.exponent;
      std::unordered_map<std::int64_t, mpz_class> next;
      next.reserve(dist.size() * a.values.size());
      for (const auto& [v, n] : dist) {
        for (std::size_t d = 0; d < a.values.size(); ++d) {
          next[v + icoef[i] * *small_integer(a.values[d])] += n * static_cast<unsigned long>(a.counts[d]);
        }
      }
      if (next.size() > cap) throw CapExceeded("linear_distribution: too many distinct partial sums");
      dist = std::move(next);
    }
    mpz_class den = 1;
    den <<= exponent;
    for (const auto& [v, n] : dist) {
      mpq_class value(mpz_class(static_cast<long>(v)), scale);
      value.canonicalize();
      mpq_class p(n, den);
      p.canonicalize();
      out.emplace(Scalar(value), p);
    }
    return out;
  }

  std::unordered_map<Scalar, mpz_class> dist{{Scalar(), 1}};
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    const Atoms a = atoms_of(model.law(i));
    exponent += a.exponent;
    std::unordered_map<Scalar, mpz_class> next;
    for (const auto& [v, n] : dist) {
      for (std::size_t d = 0; d < a.values.size(); ++d) {
        next[v + coeffs[i] * a.values[d]] += n * static_cast<unsigned long>(a.counts[d]);
      }
    }
    if (next.size() > cap) throw CapExceeded("linear_distribution: too many distinct partial sums");
    dist = std::move(next);
  }
  mpz_class den = 1;
  den <<= exponent;
  for (const auto& [v, n] : dist) {
    mpq_class p(n, den);
    p.canonicalize();
    out.emplace(v, p);
  }
  return out;
}

PointProbabilityReport linear_max_point_probability(std::span<const Scalar> coeffs, const RandomModel& model,
                                                    std::uint64_t cap) {
  return argmax(linear_distribution(coeffs, model, cap));
}

PointProbabilityReport monte_carlo_point_probability(const PolynomialSpec& f, const Scalar& z,
                                                     const RandomModel& model, std::uint64_t samples,
                                                     std::uint64_t seed, double level) {
  if (samples == 0) throw DomainError("monte_carlo_point_probability: samples must be ≥ 1");
  const Compiled c(f, model);
  Rng rng(seed, 0);
  std::vector<std::size_t> digit(c.size(), 0);
  std::uint64_t hits = 0;
  // z·L must be an integer for the integer image to hit it at all.
  std::optional<std::int64_t> target;
  bool integral = c.integral();
  if (integral) {
    const Scalar scaled = z * Scalar(mpq_class(c.scale()));
    target = small_integer(scaled);
  }
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (std::size_t v = 0; v < c.size(); ++v) digit[v] = draw(rng, c.atoms(v));
    if (integral) {
      hits += target && c.eval_int(digit) == *target;
    } else {
      hits += c.eval(digit) == z;
    }
  }
  PointProbabilityReport r;
  r.z = z;
  r.exact = false;
  r.samples = samples;
  r.hits = hits;
  r.seed = seed;
  r.level = level;
  r.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  r.probability = mpq_class(static_cast<unsigned long>(hits), static_cast<unsigned long>(samples));
  r.probability.canonicalize();
  r.interval = wilson_interval(hits, samples, level);
  return r;
}

mpq_class collapse_reducible_probability(const Tensor& t, const RandomModel& model, std::uint64_t cap) {
  if (t.order() < 3) throw DomainError("collapse_reducible_probability: needs d ≥ 3");
  const std::size_t m = t.dims().back();
  std::vector<Atoms> atoms;
  std::vector<std::size_t> radix(m);
  std::uint64_t outcomes = 1;
  unsigned exponent = 0;
  for (std::size_t i = 0; i < m; ++i) {
    atoms.push_back(atoms_of(model.law(i)));
    radix[i] = atoms.back().values.size();
    if (outcomes > cap / radix[i]) throw CapExceeded("collapse_reducible_probability: outcome space exceeds the cap");
    outcomes *= radix[i];
    exponent += atoms.back().exponent;
  }
  if (exponent > 63) throw CapExceeded("collapse_reducible_probability: outcome space exceeds the cap");
  std::vector<std::size_t> digit(m, 0);
  std::vector<Scalar> x(m);
  std::uint64_t good = 0;
  do {
    std::uint64_t w = 1;
    for (std::size_t i = 0; i < m; ++i) {
      x[i] = atoms[i].values[digit[i]];
      w *= atoms[i].counts[digit[i]];
    }
    if (is_reducible(collapse(t, x))) good += w;
  } while (advance(digit, radix));
  return dyadic(good, exponent);
}

}  // namespace polylo
