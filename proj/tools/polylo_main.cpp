// polylo: command-line front end. Exit codes: 0 ok / accept, 1 reject or
// property-check failure, 2 input error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include <polylo/anticoncentration.hpp>
#include <polylo/constructions.hpp>
#include <polylo/errors.hpp>
#include <polylo/experiments.hpp>
#include <polylo/gap.hpp>
#include <polylo/json_io.hpp>
#include <polylo/repair.hpp>
#include <polylo/submatrix.hpp>
#include <polylo/tensor.hpp>
#include <polylo/testers.hpp>

using namespace polylo;

namespace {

constexpr int kOk = 0;
constexpr int kReject = 1;
constexpr int kInputError = 2;

struct Globals {
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> cap;
  std::string out = "-";
  bool timing = false;

  std::uint64_t cap_or(std::uint64_t fallback) const { return cap.value_or(fallback); }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw InputError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit(const Globals& g, const Json& j) {
  Output out(g.out);
  out.stream() << j.dump(2) << '\n';
}

Scalar parse_scalar(const std::string& text) {
  if (!text.empty() && text.front() == '{') return scalar_from_json(Json::parse(text));
  try {
    return Scalar(parse_rational(text));
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
}

std::vector<Scalar> parse_scalar_list(const std::string& text) {
  std::vector<Scalar> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_scalar(item));
  return out;
}

// Every subcommand callback returns its exit code through here.
struct Runner {
  int code = kOk;
};

void add_matrix_commands(CLI::App& app, Globals& g) {
  static std::string input;
  auto* rank_cmd = app.add_subcommand("rank", "Exact rank of a matrix");
  rank_cmd->add_option("input", input, "matrix JSON ('-' for stdin)")->required();
  rank_cmd->callback([&] {
    const Matrix m = matrix_from_json(read_json_file(input));
    emit(g, Json{{"rank", rank(m)}});
  });

  auto* det_cmd = app.add_subcommand("det", "Exact determinant of a square matrix");
  det_cmd->add_option("input", input, "matrix JSON")->required();
  det_cmd->callback([&] {
    const Matrix m = matrix_from_json(read_json_file(input));
    emit(g, Json{{"det", to_json(det(m))}});
  });

  static std::size_t r = 2;
  static std::string mode = "exact";
  static std::uint64_t samples = 10'000;
  auto* sf = app.add_subcommand("singular-fraction", "Fraction of singular r×r submatrices");
  sf->add_option("input", input, "matrix JSON")->required();
  sf->add_option("--r", r, "minor size")->required();
  sf->add_option("--mode", mode, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));
  sf->add_option("--samples", samples, "sampled mode draws");
  sf->callback([&] {
    const Matrix m = matrix_from_json(read_json_file(input));
    FractionOptions o;
    o.mode = mode == "exact" ? CountMode::exact : CountMode::sampled;
    o.cap = g.cap_or(kDefaultSubmatrixCap);
    o.samples = samples;
    o.seed = g.seed;
    const auto s = singular_fraction(m, r, o);
    Json j{{"r", s.r},
           {"mode", mode},
           {"total", s.total},
           {"nonsingular", s.nonsingular},
           {"nonsingular_fraction", to_json(s.nonsingular_fraction())},
           {"singular_fraction", to_json(s.singular_fraction())}};
    if (s.mode == CountMode::sampled) {
      j["samples"] = s.samples;
      j["seed"] = s.seed;
      j["interval"] = {s.interval.low, s.interval.high};
    }
    emit(g, j);
  });
}

void add_tensor_commands(CLI::App& app, Globals& g, Runner& run) {
  static std::string input;
  static std::string partition;
  static std::string x;
  auto* tensor = app.add_subcommand("tensor", "Reducibility, flattening and collapse");
  tensor->require_subcommand(1);

  auto* red = tensor->add_subcommand("reducible", "Is some flattening of rank ≤ 1? Exit 1 if not");
  red->add_option("input", input, "tensor JSON")->required();
  red->callback([&] {
    const Tensor t = tensor_from_json(read_json_file(input));
    const auto p = is_reducible(t);
    emit(g, Json{{"reducible", p.has_value()}, {"partition", p ? Json(to_string(*p)) : Json(nullptr)}});
    run.code = p ? kOk : kReject;
  });

  auto* flat = tensor->add_subcommand("flatten", "Flattening along an axis partition");
  flat->add_option("input", input, "tensor JSON")->required();
  flat->add_option("--partition", partition, "1-based, e.g. \"1|2,3\"")->required();
  flat->callback([&] {
    const Tensor t = tensor_from_json(read_json_file(input));
    emit(g, to_json(flatten(t, parse_partition(partition, t.order()))));
  });

  auto* col = tensor->add_subcommand("collapse", "Contract the last axis with a vector");
  col->add_option("input", input, "tensor JSON")->required();
  col->add_option("--x", x, "comma-separated scalars")->required();
  col->callback([&] {
    const Tensor t = tensor_from_json(read_json_file(input));
    emit(g, to_json(collapse(t, parse_scalar_list(x))));
  });
}

void add_test_commands(CLI::App& app, Globals& g, Runner& run) {
  static std::string input;
  static std::string eps = "1/4";
  static std::uint64_t samples = 1000;
  static std::size_t side = 0;
  static std::string delta;
  static std::size_t r = 2;
  auto* test = app.add_subcommand("test", "Randomized property testers");
  test->require_subcommand(1);

  auto config = [&] {
    TesterConfig c;
    c.samples = samples;
    c.seed = g.seed;
    c.epsilon = parse_rational(eps);
    c.side = side;
    if (!delta.empty()) c.delta = parse_rational(delta);
    return c;
  };
  auto finish = [&](const Verdict& v) {
    emit(g, to_json(v));
    run.code = v.decision == Decision::accept ? kOk : kReject;
  };

  auto* t = test->add_subcommand("tensor", "Reducibility tester; exit 1 on reject");
  t->add_option("input", input, "tensor JSON")->required();
  t->add_option("--eps", eps, "distance parameter ε");
  t->add_option("--samples", samples, "subtensors drawn");
  t->add_option("--side", side, "probe side (default 2^{d-1}; other values are non-standard)");
  t->add_option("--delta", delta, "threshold override (non-standard)");
  t->callback([config, finish] {
    finish(tensor_reducibility_tester(tensor_from_json(read_json_file(input)), config()));
  });

  auto* m = test->add_subcommand("matrix", "Rank < r tester; exit 1 on reject");
  m->add_option("input", input, "matrix JSON")->required();
  m->add_option("--r", r, "minor size")->required();
  m->add_option("--eps", eps, "rejection threshold ε");
  m->add_option("--samples", samples, "submatrices drawn");
  m->callback([config, finish] {
    finish(matrix_rank_tester(matrix_from_json(read_json_file(input)), r, config()));
  });
}

void add_repair_commands(CLI::App& app, Globals& g, Runner& run) {
  static std::string input;
  static std::size_t r = 2;
  static std::string eps = "1/4";
  auto* repair = app.add_subcommand("repair", "Constructive repair algorithms");
  repair->require_subcommand(1);

  auto* sym = repair->add_subcommand("sym-low-rank", "Symmetric matrix of rank < r close to the input");
  sym->add_option("input", input, "symmetric matrix JSON")->required();
  sym->add_option("--r", r, "target: rank < r")->required();
  sym->callback([&] {
    RepairOptions o;
    o.cap = g.cap_or(o.cap);
    o.seed = g.seed;
    emit(g, to_json(symmetric_low_rank_repair(matrix_from_json(read_json_file(input)), r, o)));
  });

  auto* ten = repair->add_subcommand("tensor", "Reducible tensor close to the input; exit 1 if none found");
  ten->add_option("input", input, "tensor JSON")->required();
  ten->add_option("--eps", eps, "distance parameter ε");
  ten->callback([&] {
    TensorRepairOptions o;
    o.cap = g.cap_or(o.cap);
    std::vector<RepairWitness> diagnostics;
    const auto result =
        tensor_repair(tensor_from_json(read_json_file(input)), parse_rational(eps), g.seed, o, &diagnostics);
    if (result) {
      emit(g, to_json(*result));
      return;
    }
    Json witness = Json::array();
    for (const auto& w : diagnostics) witness.push_back(to_json(w));
    emit(g, Json{{"output", nullptr}, {"witness", std::move(witness)}});
    run.code = kReject;
  });
}

void add_anticonc_command(CLI::App& app, Globals& g) {
  static std::string poly;
  static std::string model = "rademacher";
  static std::string shift = "0";
  static bool exact = false;
  static bool mc = false;
  static std::uint64_t samples = 100'000;
  static std::string z;
  static double level = 0.99;
  static bool distribution = false;
  auto* a = app.add_subcommand("anticonc", "Point probabilities of a polynomial of random signs");
  a->add_option("--poly", poly, "polynomial JSON")->required();
  a->add_option("--model", model, "coordinate law")->check(CLI::IsMember({"rademacher", "lazy", "shifted"}));
  a->add_option("--shift", shift, "shift s for the shifted model (values s ± 1)");
  auto* ex = a->add_flag("--exact", exact, "exact enumeration (default)");
  a->add_flag("--mc", mc, "Monte Carlo estimate of Pr[f = z]")->excludes(ex);
  a->add_option("--samples", samples, "Monte Carlo samples");
  a->add_option("--z", z, "target value (exact default: the largest atom; MC default: 0)");
  a->add_option("--level", level, "confidence level of the Monte Carlo interval");
  a->add_flag("--distribution", distribution, "exact mode: also print the full distribution");
  a->callback([&] {
    const PolynomialSpec f = polynomial_from_json(read_json_file(poly));
    const RandomModel m = parse_model(model, parse_scalar(shift));
    if (mc) {
      const Scalar target = z.empty() ? Scalar() : parse_scalar(z);
      emit(g, to_json(monte_carlo_point_probability(f, target, m, samples, g.seed, level)));
      return;
    }
    const auto dist = exact_distribution(f, m, g.cap_or(kDefaultOutcomeCap));
    PointProbabilityReport r = argmax(dist);
    Json j = to_json(r);
    j["model"] = m.name();
    if (!z.empty()) {
      const Scalar target = parse_scalar(z);
      const auto it = dist.find(target);
      j["z"] = to_json(target);
      j["probability"] = to_json(it == dist.end() ? mpq_class(0) : it->second);
      j["max_probability"] = to_json(r.probability);
    }
    if (distribution) j["distribution"] = to_json(dist);
    emit(g, j);
  });
}

void add_gap_commands(CLI::App& app, Globals& g, Runner& run) {
  static std::string values;
  static std::size_t rank = 1;
  static std::size_t outliers = 0;
  static std::uint64_t bound = 4;
  static std::string gap_file;
  static std::string vec;
  static std::size_t r = 1;
  static std::size_t m = 1;
  static std::uint64_t v = 1;
  auto* gap = app.add_subcommand("gap", "Symmetric generalized arithmetic progressions");
  gap->require_subcommand(1);

  auto* cover = gap->add_subcommand("cover", "Smallest GAP in the bounded search space; exit 1 if none");
  cover->add_option("--values", values, "JSON array of scalars or vectors")->required();
  cover->add_option("--rank", rank, "maximum rank (≤ 2)");
  cover->add_option("--outliers", outliers, "values allowed outside the GAP");
  cover->add_option("--bound", bound, "generator denominators 1..bound");
  cover->callback([&] {
    CoverQuery q;
    q.values = values_from_json(read_json_file(values));
    q.max_rank = rank;
    q.outliers_allowed = outliers;
    q.generator_bound = bound;
    q.volume_cap = g.cap_or(q.volume_cap);
    const auto result = minimal_cover(q);
    if (result) {
      emit(g, to_json(*result));
    } else {
      emit(g, Json{{"gap", nullptr}, {"volume_cap", q.volume_cap}});
      run.code = kReject;
    }
  });

  auto* contains = gap->add_subcommand("contains", "Membership by box enumeration; exit 1 if not contained");
  contains->add_option("--gap", gap_file, "GAP JSON")->required();
  contains->add_option("--u", vec, "JSON vector, e.g. '[\"6\"]'")->required();
  contains->callback([&] {
    const SymmetricGAP s = gap_from_json(read_json_file(gap_file));
    Vec u = values_from_json(Json::array({Json::parse(vec)})).front();
    const bool in = gap_contains(s, u, g.cap_or(10'000'000));
    emit(g, Json{{"contains", in}, {"volume", gap_volume(s).get_str()}});
    run.code = in ? kOk : kReject;
  });

  auto* count = gap->add_subcommand("count", "|Z(V)|: integer r×m matrices with ∏(2N_i+1) ≤ V");
  count->add_option("--r", r)->required();
  count->add_option("--m", m)->required();
  count->add_option("--V", v)->required();
  count->callback([&] { emit(g, Json{{"r", r}, {"m", m}, {"V", v}, {"count", count_Z_V(r, m, v).get_str()}}); });
}

void add_gen_commands(CLI::App& app, Globals& g) {
  static std::size_t n = 8;
  static std::size_t d = 2;
  static std::optional<std::size_t> part_size;
  static std::size_t ell = 2;
  static std::vector<std::size_t> dims{6, 6, 6};
  static std::size_t corrupt = 0;
  static std::size_t r = 1;
  static bool symmetric = false;
  auto* gen = app.add_subcommand("gen", "Generators for the constructed objects");
  gen->require_subcommand(1);

  auto* ce = gen->add_subcommand("counterexample", "L_1⋯L_d − L_{d+1}⋯L_{2d} as polynomial JSON");
  ce->add_option("--n", n)->required();
  ce->add_option("--d", d)->required();
  ce->add_option("--part-size", part_size, "override 2⌊n/(4d)⌋");
  ce->callback([&] { emit(g, to_json(make_counterexample(n, d, part_size))); });

  auto* corner = gen->add_subcommand("corner", "Symmetric 0/1 corner matrix");
  corner->add_option("--n", n)->required();
  corner->add_option("--ell", ell)->required();
  corner->callback([&] { emit(g, to_json(make_corner_matrix(n, ell))); });

  auto* t = gen->add_subcommand("rank1-tensor", "Random rank-1 tensor with corrupted cells");
  t->add_option("--dims", dims, "e.g. 6,6,6")->delimiter(',');
  t->add_option("--corrupt", corrupt, "cells overwritten");
  t->callback([&] { emit(g, to_json(make_random_rank1_tensor(dims, g.seed, corrupt))); });

  auto* lr = gen->add_subcommand("low-rank", "Random rank-≤r matrix with corrupted entries");
  lr->add_option("--n", n)->required();
  lr->add_option("--r", r)->required();
  lr->add_option("--corrupt", corrupt, "positions overwritten");
  lr->add_flag("--symmetric", symmetric);
  lr->callback([&] { emit(g, to_json(make_random_low_rank(n, r, g.seed, corrupt, symmetric))); });

  auto* ps = gen->add_subcommand("power-sum", "(x_1 + … + x_n)^d");
  ps->add_option("--n", n)->required();
  ps->add_option("--d", d)->required();
  ps->callback([&] { emit(g, to_json(make_power_sum(n, static_cast<unsigned>(d), g.cap_or(1'000'000)))); });
}

void add_experiment_commands(CLI::App& app, Globals& g) {
  static std::string kind = "counterexample";
  static std::vector<std::size_t> ns;
  static unsigned d = 2;
  static std::size_t rank = 2;
  static std::string model = "rademacher";
  static std::string shift = "0";
  static std::string mode = "auto";
  static std::uint64_t samples = 100'000;
  static std::string z = "0";
  static std::optional<std::size_t> part_size;
  static unsigned threads = 1;
  static std::vector<std::size_t> dims{6, 6, 6};
  static std::size_t corrupt = 20;
  static std::string eps = "1/4";
  static std::vector<std::uint64_t> samples_list{50, 100, 200, 400};
  static std::uint64_t trials = 100;
  auto* exp = app.add_subcommand("experiment", "CSV tables");
  exp->require_subcommand(1);

  auto* sc = exp->add_subcommand("scaling", "Point probability against n");
  sc->add_option("--kind", kind)->check(CLI::IsMember(
      {"counterexample", "power_sum", "power-sum", "random_quadratic", "random-quadratic"}));
  sc->add_option("--n", ns, "comma-separated sizes")->delimiter(',')->required();
  sc->add_option("--d", d, "degree / number of factors");
  sc->add_option("--rank", rank, "random_quadratic: rank of the form");
  sc->add_option("--model", model)->check(CLI::IsMember({"rademacher", "lazy", "shifted"}));
  sc->add_option("--shift", shift);
  sc->add_option("--mode", mode)->check(CLI::IsMember({"exact", "mc", "auto"}));
  sc->add_option("--samples", samples);
  sc->add_option("--z", z, "Monte Carlo target");
  sc->add_option("--part-size", part_size);
  sc->add_option("--threads", threads);
  sc->callback([&] {
    ScalingOptions o;
    o.kind = parse_experiment_kind(kind);
    o.n_list = ns;
    o.d = d;
    o.rank = rank;
    o.model = model;
    o.shift = parse_scalar(shift);
    o.mode = parse_experiment_mode(mode);
    o.samples = samples;
    o.seed = g.seed;
    o.cap = g.cap_or(o.cap);
    o.part_size = part_size;
    o.z = parse_scalar(z);
    o.threads = threads;
    const auto rows = run_experiment_scaling(o);
    Output out(g.out);
    write_scaling_csv(out.stream(), o, rows, g.timing);
  });

  auto* roc = exp->add_subcommand("roc", "Tensor tester rejection rates against sample count");
  roc->add_option("--dims", dims)->delimiter(',');
  roc->add_option("--corrupt", corrupt);
  roc->add_option("--eps", eps);
  roc->add_option("--samples", samples_list, "comma-separated sample counts")->delimiter(',');
  roc->add_option("--trials", trials);
  roc->callback([&] {
    RocOptions o;
    o.dims = dims;
    o.corrupt_count = corrupt;
    o.epsilon = parse_rational(eps);
    o.samples_list = samples_list;
    o.trials = trials;
    o.seed = g.seed;
    o.cap = g.cap_or(o.cap);
    const auto rows = run_tester_roc(o);
    Output out(g.out);
    write_roc_csv(out.stream(), o, rows, g.timing);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact testers, repair, anticoncentration and GAP tools"};
  app.require_subcommand(1);
  Globals g;
  Runner run;
  app.add_option("--seed", g.seed, "64-bit seed")->envname("POLYLO_SEED");
  app.add_option("--cap", g.cap, "enumeration cap (gap cover: volume cap)")->envname("POLYLO_CAP");
  app.add_option("--out", g.out, "output file ('-' for stdout)");
  app.add_flag("--timing", g.timing, "add wall_time columns to CSV output");
  app.fallthrough();

  add_matrix_commands(app, g);
  add_tensor_commands(app, g, run);
  add_test_commands(app, g, run);
  add_repair_commands(app, g, run);
  add_anticonc_command(app, g);
  add_gap_commands(app, g, run);
  add_gen_commands(app, g);
  add_experiment_commands(app, g);
  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* leaf : sub->get_subcommands({})) leaf->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kInputError;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << " (raise --cap or POLYLO_CAP, or use a sampled mode)\n";
    return kInputError;
  } catch (const ConstructionError& e) {
    std::cerr << "construction failed: " << e.what() << '\n';
    return kReject;
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  }
  return run.code;
}
