#include "polylo/json_io.hpp"

#include <fstream>
#include <iostream>

#include "polylo/errors.hpp"

namespace polylo {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("JSON: missing field '") + key + "'");
  return j.at(key);
}

std::size_t count_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw InputError(std::string("JSON: ") + what + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw InputError(std::string("JSON: '") + key + "' must be an array");
  return a;
}

Json index_set(const IndexSet& s) { return Json(s); }

}  // namespace

Json to_json(const mpq_class& q) { return rational_to_string(q); }

mpq_class rational_from_json(const Json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (!j.is_string()) throw InputError("JSON: rational must be a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
}

Json to_json(const Scalar& s) {
  if (s.is_real()) return to_json(s.re());
  return Json{{"re", to_json(s.re())}, {"im", to_json(s.im())}};
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_object()) {
    const auto im = j.contains("im") ? rational_from_json(j.at("im")) : mpq_class(0);
    return Scalar(rational_from_json(field(j, "re")), im);
  }
  return Scalar(rational_from_json(j));
}

Json to_json(const Matrix& m) {
  Json entries = Json::array();
  for (const auto& s : m.entries()) entries.push_back(to_json(s));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const Json& j) {
  const auto rows = count_from_json(field(j, "rows"), "rows");
  const auto cols = count_from_json(field(j, "cols"), "cols");
  const Json& e = array_field(j, "entries");
  if (e.size() != rows * cols) throw InputError("JSON matrix: expected rows·cols entries");
  std::vector<Scalar> entries;
  entries.reserve(e.size());
  for (const auto& x : e) entries.push_back(scalar_from_json(x));
  return Matrix(rows, cols, std::move(entries));
}

Json to_json(const Tensor& t) {
  Json entries = Json::array();
  for (const auto& s : t.entries()) entries.push_back(to_json(s));
  return Json{{"dims", t.dims()}, {"entries", std::move(entries)}};
}

Tensor tensor_from_json(const Json& j) {
  std::vector<std::size_t> dims;
  std::size_t size = 1;
  for (const auto& d : array_field(j, "dims")) {
    dims.push_back(count_from_json(d, "dims"));
    size *= dims.back();
  }
  const Json& e = array_field(j, "entries");
  if (e.size() != size) throw InputError("JSON tensor: entry count does not match dims");
  std::vector<Scalar> entries;
  entries.reserve(e.size());
  for (const auto& x : e) entries.push_back(scalar_from_json(x));
  return Tensor(std::move(dims), std::move(entries));
}

Json to_json(const PolynomialSpec& f) {
  Json terms = Json::array();
  for (const auto& [mono, coef] : f.terms()) {
    Json exps = Json::object();
    for (const auto& [var, e] : mono) exps[std::to_string(var + 1)] = e;
    terms.push_back(Json{{"exps", std::move(exps)}, {"coef", to_json(coef)}});
  }
  return Json{{"n", f.n_vars()}, {"terms", std::move(terms)}};
}

PolynomialSpec polynomial_from_json(const Json& j) {
  const auto n = count_from_json(field(j, "n"), "n");
  PolynomialSpec f(n);
  for (const auto& term : array_field(j, "terms")) {
    const Json& exps = field(term, "exps");
    if (!exps.is_object()) throw InputError("JSON polynomial: 'exps' must be an object");
    Monomial m;
    for (const auto& [key, e] : exps.items()) {
      std::size_t var = 0;
      try {
        std::size_t used = 0;
        var = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw InputError("JSON polynomial: variable '" + key + "' is not a number");
      }
      if (var < 1 || var > n) throw InputError("JSON polynomial: variable " + key + " out of range 1..n");
      m.emplace_back(var - 1, static_cast<unsigned>(count_from_json(e, "exponent")));
    }
    f.add_term(std::move(m), scalar_from_json(field(term, "coef")));
  }
  return f;
}

Json to_json(const SymmetricGAP& g) {
  Json gens = Json::array();
  for (const auto& v : g.generators) {
    Json row = Json::array();
    for (const auto& s : v) row.push_back(to_json(s));
    gens.push_back(std::move(row));
  }
  return Json{{"generators", std::move(gens)}, {"bounds", g.bounds}};
}

SymmetricGAP gap_from_json(const Json& j) {
  SymmetricGAP g;
  g.generators = values_from_json(array_field(j, "generators"));
  for (const auto& b : array_field(j, "bounds")) g.bounds.push_back(count_from_json(b, "bounds"));
  if (g.bounds.size() != g.generators.size()) throw InputError("JSON GAP: one bound per generator");
  return g;
}

std::vector<Vec> values_from_json(const Json& j) {
  const Json& a = j.is_object() ? array_field(j, "values") : j;
  if (!a.is_array()) throw InputError("JSON values: expected an array");
  std::vector<Vec> out;
  for (const auto& x : a) {
    Vec v;
    if (x.is_array()) {
      for (const auto& s : x) v.push_back(scalar_from_json(s));
    } else {
      v.push_back(scalar_from_json(x));
    }
    if (!out.empty() && v.size() != out.front().size()) throw InputError("JSON values: mixed dimensions");
    out.push_back(std::move(v));
  }
  return out;
}

Json to_json(const CoverResult& r) {
  return Json{{"gap", to_json(r.gap)},
              {"rank", r.gap.rank()},
              {"volume", r.volume.get_str()},
              {"covered", index_set(r.covered)},
              {"outliers", index_set(r.outliers)},
              {"upper_bound", r.upper_bound}};
}

Json to_json(const RepairWitness& w) {
  Json j{{"stage", w.stage}};
  if (w.alpha) {
    j["alpha"] = to_json(*w.alpha);
    j["alpha_exact"] = w.alpha_exact;
  }
  if (w.k) j["k"] = *w.k;
  if (!w.rows.empty() || !w.cols.empty()) {
    j["rows"] = index_set(w.rows);
    j["cols"] = index_set(w.cols);
  }
  if (w.extensions) {
    j["extensions"] = *w.extensions;
    j["exhaustive"] = w.exhaustive;
  }
  if (w.transposed) j["transposed"] = true;
  if (!w.basis.empty()) j["basis"] = index_set(w.basis);
  if (w.asymmetric_entries) j["asymmetric_entries"] = *w.asymmetric_entries;
  if (w.change_bound) j["change_bound"] = to_json(*w.change_bound);
  if (!w.anchor.empty()) j["anchor"] = index_set(w.anchor);
  if (w.partition) j["partition"] = to_string(*w.partition);
  if (w.anchored_fraction) j["anchored_fraction"] = to_json(*w.anchored_fraction);
  if (w.partition_fraction) j["partition_fraction"] = to_json(*w.partition_fraction);
  if (w.anchor_threshold_met) j["anchor_threshold_met"] = *w.anchor_threshold_met;
  if (!w.notes.empty()) j["notes"] = w.notes;
  return j;
}

namespace {

template <class T>
Json repair_json(const RepairOutcome<T>& r) {
  Json witness = Json::array();
  for (const auto& w : r.witness) witness.push_back(to_json(w));
  return Json{{"output", to_json(r.output)},
              {"changed_entries", r.changed_entries},
              {"changed_fraction", to_json(r.changed_fraction)},
              {"witness", std::move(witness)}};
}

}  // namespace

Json to_json(const MatrixRepair& r) { return repair_json(r); }
Json to_json(const TensorRepair& r) { return repair_json(r); }

Json to_json(const Verdict& v) {
  return Json{{"decision", v.decision == Decision::accept ? "accept" : "reject"},
              {"observed_bad_fraction", to_json(v.observed_bad_fraction)},
              {"threshold", to_json(v.threshold)},
              {"samples", v.samples},
              {"bad", v.bad},
              {"side", v.side},
              {"nonstandard", v.nonstandard}};
}

Json to_json(const PointProbabilityReport& r) {
  if (r.exact) return Json{{"mode", "exact"}, {"z", to_json(r.z)}, {"probability", to_json(r.probability)}};
  return Json{{"mode", "monte_carlo"},
              {"z", to_json(r.z)},
              {"estimate", r.estimate},
              {"interval", {r.interval.low, r.interval.high}},
              {"level", r.level},
              {"samples", r.samples},
              {"hits", r.hits},
              {"seed", r.seed}};
}

Json to_json(const TupleCountingReport& r) {
  return Json{{"holds", r.holds},
              {"bad_subsets", r.bad_subsets},
              {"total_subsets", r.total_subsets},
              {"bad_fraction", to_json(r.bad_fraction)},
              {"bound", to_json(r.bound)},
              {"large_probability", to_json(r.large_probability)}};
}

Json to_json(const ValueDistribution& d) {
  Json out = Json::array();
  for (const auto& [value, p] : d) out.push_back(Json{{"value", to_json(value)}, {"probability", to_json(p)}});
  return out;
}

Json read_json(std::istream& in) {
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  if (path == "-") return read_json(std::cin);
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_json(in);
}

}  // namespace polylo
