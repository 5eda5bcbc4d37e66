#include "polylo/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <thread>

#include "polylo/constructions.hpp"
#include "polylo/errors.hpp"
#include "polylo/random.hpp"
#include "polylo/testers.hpp"

namespace polylo {

namespace {

ValueDistribution product(const ValueDistribution& a, const ValueDistribution& b) {
  ValueDistribution out;
  for (const auto& [x, p] : a) {
    for (const auto& [y, q] : b) out[x * y] += p * q;
  }
  return out;
}

ValueDistribution part_sum(std::size_t n, const IndexSet& part, const RandomModel& model, std::uint64_t cap) {
  std::vector<Scalar> coeffs(n);
  for (auto i : part) coeffs[i] = 1;
  return linear_distribution(coeffs, model, cap);
}

mpq_class mass_at_zero(const ValueDistribution& d) {
  const auto it = d.find(Scalar());
  return it == d.end() ? mpq_class(0) : it->second;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Quadratic form xᵀAx of a random symmetric integer matrix of rank ≤ r.
PolynomialSpec random_quadratic(std::size_t n, std::size_t r, std::uint64_t seed) {
  const Matrix a = make_random_low_rank(n, std::min(r, n), seed, 0, true);
  PolynomialSpec f(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!a(i, j).is_zero()) f.add_term({{i, 1}, {j, 1}}, a(i, j));
    }
  }
  return f;
}

PolynomialSpec experiment_polynomial(const ScalingOptions& o, std::size_t n, std::uint64_t row_seed) {
  switch (o.kind) {
    case ExperimentKind::counterexample:
      return make_counterexample(n, o.d, o.part_size);
    case ExperimentKind::power_sum:
      return make_power_sum(n, o.d);
    case ExperimentKind::random_quadratic:
      return random_quadratic(n, o.rank, row_seed);
  }
  throw DomainError("unknown experiment kind");
}

ValueDistribution exact_experiment_distribution(const ScalingOptions& o, std::size_t n, const RandomModel& model,
                                                std::uint64_t row_seed) {
  switch (o.kind) {
    case ExperimentKind::counterexample:
      return counterexample_distribution(n, o.d, model, o.part_size);
    case ExperimentKind::power_sum: {
      const std::vector<Scalar> ones(n, Scalar(1));
      ValueDistribution out;
      for (const auto& [s, p] : linear_distribution(ones, model)) {
        Scalar v(1);
        for (unsigned k = 0; k < o.d; ++k) v *= s;
        out[v] += p;
      }
      return out;
    }
    case ExperimentKind::random_quadratic:
      return exact_distribution(random_quadratic(n, o.rank, row_seed), model, o.cap);
  }
  throw DomainError("unknown experiment kind");
}

ScalingRow scaling_row(const ScalingOptions& o, std::size_t n, const RandomModel& model) {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(o.seed, n);
  const std::uint64_t poly_seed = rng.next();
  const std::uint64_t mc_seed = rng.next();
  ScalingRow row;
  row.n = n;
  bool done = false;
  if (o.mode != ExperimentMode::monte_carlo) {
    try {
      const auto dist = exact_experiment_distribution(o, n, model, poly_seed);
      const auto best = argmax(dist);
      row.z = best.z;
      row.rho = best.probability;
      row.p_zero = mass_at_zero(dist);
      row.estimate = best.probability.get_d();
      done = true;
    } catch (const CapExceeded&) {
      if (o.mode == ExperimentMode::exact) throw;
    }
  }
  if (!done) {
    const auto f = experiment_polynomial(o, n, poly_seed);
    const auto r = monte_carlo_point_probability(f, o.z, model, o.samples, mc_seed, o.level);
    row.exact = false;
    row.z = o.z;
    row.estimate = r.estimate;
    row.ci = r.interval;
  }
  row.n_rho = static_cast<double>(n) * row.estimate;
  row.sqrt_n_rho = std::sqrt(static_cast<double>(n)) * row.estimate;
  row.wall_time = seconds_since(start);
  return row;
}

}  // namespace

ValueDistribution counterexample_distribution(std::size_t n, std::size_t d, const RandomModel& model,
                                              std::optional<std::size_t> part_size, std::uint64_t cap) {
  const auto parts = counterexample_parts(n, d, part_size);
  ValueDistribution left{{Scalar(1), mpq_class(1)}};
  ValueDistribution right = left;
  for (std::size_t j = 0; j < d; ++j) {
    left = product(left, part_sum(n, parts[j], model, cap));
    right = product(right, part_sum(n, parts[d + j], model, cap));
  }
  ValueDistribution out;
  for (const auto& [x, p] : left) {
    for (const auto& [y, q] : right) out[x - y] += p * q;
  }
  return out;
}

CounterexampleZeroBound counterexample_zero_bound(std::size_t n, std::size_t d, const RandomModel& model,
                                                  std::optional<std::size_t> part_size) {
  const auto parts = counterexample_parts(n, d, part_size);
  CounterexampleZeroBound b;
  b.p_zero = mass_at_zero(counterexample_distribution(n, d, model, part_size));
  b.p_first = mass_at_zero(part_sum(n, parts.front(), model, kDefaultValueCap));
  b.p_last = mass_at_zero(part_sum(n, parts.back(), model, kDefaultValueCap));
  b.product = b.p_first * b.p_last;
  b.holds = b.p_zero >= b.product;
  return b;
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  if (name == "counterexample") return ExperimentKind::counterexample;
  if (name == "power_sum" || name == "power-sum") return ExperimentKind::power_sum;
  if (name == "random_quadratic" || name == "random-quadratic") return ExperimentKind::random_quadratic;
  throw InputError("unknown experiment kind '" + name + "'");
}

ExperimentMode parse_experiment_mode(const std::string& name) {
  if (name == "exact") return ExperimentMode::exact;
  if (name == "mc" || name == "monte_carlo") return ExperimentMode::monte_carlo;
  if (name == "auto") return ExperimentMode::automatic;
  throw InputError("unknown experiment mode '" + name + "'");
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::counterexample:
      return "counterexample";
    case ExperimentKind::power_sum:
      return "power_sum";
    case ExperimentKind::random_quadratic:
      return "random_quadratic";
  }
  return "?";
}

std::string to_string(ExperimentMode mode) {
  switch (mode) {
    case ExperimentMode::exact:
      return "exact";
    case ExperimentMode::monte_carlo:
      return "mc";
    case ExperimentMode::automatic:
      return "auto";
  }
  return "?";
}

std::vector<ScalingRow> run_experiment_scaling(const ScalingOptions& options) {
  if (options.d == 0) throw DomainError("experiment: d must be positive");
  if (options.mode != ExperimentMode::exact && options.samples == 0) {
    throw DomainError("experiment: Monte Carlo needs samples > 0");
  }
  const RandomModel model = parse_model(options.model, options.shift);
  const std::size_t count = options.n_list.size();
  std::vector<ScalingRow> rows(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < count;) {
      try {
        rows[k] = scaling_row(options, options.n_list[k], model);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::vector<RocRow> run_tester_roc(const RocOptions& options) {
  const std::size_t d = options.dims.size();
  if (d < 2) throw DomainError("roc: tensors need order ≥ 2");
  std::vector<Tensor> clean;
  std::vector<Tensor> corrupt;
  std::vector<std::uint64_t> tester_seeds;
  for (std::uint64_t t = 0; t < options.trials; ++t) {
    Rng rng(options.seed, t);
    clean.push_back(make_random_rank1_tensor(options.dims, rng.next(), 0));
    corrupt.push_back(make_random_rank1_tensor(options.dims, rng.next(), options.corrupt_count));
    tester_seeds.push_back(rng.next());
  }
  std::optional<double> mean_fraction;
  if (options.trials > 0) {
    try {
      const std::size_t side = std::size_t{1} << (d - 1);
      mpq_class total = 0;
      for (const auto& t : corrupt) total += exact_irreducible_fraction(t, side, options.cap);
      mean_fraction = mpq_class(total / options.trials).get_d();
    } catch (const CapExceeded&) {
      mean_fraction.reset();
    }
  }
  std::vector<RocRow> rows;
  if (options.trials == 0) return rows;
  for (auto samples : options.samples_list) {
    const auto start = std::chrono::steady_clock::now();
    RocRow row;
    row.samples = samples;
    row.trials = options.trials;
    row.delta = tensor_delta(options.epsilon, d);
    row.mean_exact_fraction = mean_fraction;
    TesterConfig config;
    config.samples = samples;
    config.epsilon = options.epsilon;
    for (std::uint64_t t = 0; t < options.trials; ++t) {
      config.seed = tester_seeds[t];
      row.clean_rejects += tensor_reducibility_tester(clean[t], config).decision == Decision::reject;
      row.corrupt_rejects += tensor_reducibility_tester(corrupt[t], config).decision == Decision::reject;
    }
    row.wall_time = seconds_since(start);
    rows.push_back(row);
  }
  return rows;
}

void write_scaling_csv(std::ostream& out, const ScalingOptions& o, const std::vector<ScalingRow>& rows,
                       bool timing) {
  out << "# polylo scaling v1\n";
  out << "# kind=" << to_string(o.kind) << " d=" << o.d << " rank=" << o.rank << " model=" << o.model
      << " shift=" << o.shift << " mode=" << to_string(o.mode) << " samples=" << o.samples << " seed=" << o.seed
      << " cap=" << o.cap << " level=" << fmt(o.level);
  if (o.part_size) out << " part_size=" << *o.part_size;
  out << '\n';
  out << "n,mode,z,rho,p_zero,estimate,ci_low,ci_high,n_rho,sqrt_n_rho";
  if (timing) out << ",wall_time";
  out << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << (r.exact ? "exact" : "mc") << ',' << r.z << ',';
    if (r.rho) out << *r.rho;
    out << ',';
    if (r.p_zero) out << *r.p_zero;
    out << ',' << fmt(r.estimate) << ',';
    if (r.ci) out << fmt(r.ci->low) << ',' << fmt(r.ci->high);
    else out << ',';
    out << ',' << fmt(r.n_rho) << ',' << fmt(r.sqrt_n_rho);
    if (timing) out << ',' << fmt(r.wall_time);
    out << '\n';
  }
}

void write_roc_csv(std::ostream& out, const RocOptions& o, const std::vector<RocRow>& rows, bool timing) {
  out << "# polylo tester_roc v1\n";
  out << "# dims=";
  for (std::size_t k = 0; k < o.dims.size(); ++k) out << (k ? "x" : "") << o.dims[k];
  out << " corrupt=" << o.corrupt_count << " eps=" << o.epsilon << " trials=" << o.trials << " seed=" << o.seed
      << '\n';
  out << "samples,trials,delta,clean_reject_rate,corrupt_reject_rate,clean_rejects,corrupt_rejects,"
         "mean_exact_fraction";
  if (timing) out << ",wall_time";
  out << '\n';
  for (const auto& r : rows) {
    const double t = static_cast<double>(r.trials);
    out << r.samples << ',' << r.trials << ',' << r.delta << ',' << fmt(static_cast<double>(r.clean_rejects) / t)
        << ',' << fmt(static_cast<double>(r.corrupt_rejects) / t) << ',' << r.clean_rejects << ','
        << r.corrupt_rejects << ',';
    if (r.mean_exact_fraction) out << fmt(*r.mean_exact_fraction);
    if (timing) out << ',' << fmt(r.wall_time);
    out << '\n';
  }
}

}  // namespace polylo
