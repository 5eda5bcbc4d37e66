#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polylo/anticoncentration.hpp"
#include "polylo/gap.hpp"
#include "polylo/matrix.hpp"
#include "polylo/polynomial.hpp"
#include "polylo/repair.hpp"
#include "polylo/tensor.hpp"
#include "polylo/testers.hpp"

namespace polylo {

using Json = nlohmann::json;

// Readers throw InputError on anything that does not match the schema.

/// Real scalars as "p/q" strings, complex ones as {"re": "p/q", "im": "r/s"}.
/// Readers also take JSON integers.
Json to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);
Json to_json(const mpq_class& q);
mpq_class rational_from_json(const Json& j);

/// {"rows": R, "cols": C, "entries": [...]}, row-major.
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"dims": [...], "entries": [...]}, row-major.
Json to_json(const Tensor& t);
Tensor tensor_from_json(const Json& j);

/// {"n": n, "terms": [{"exps": {"1": 1, "3": 2}, "coef": ...}]}, variables 1-based.
Json to_json(const PolynomialSpec& f);
PolynomialSpec polynomial_from_json(const Json& j);

/// {"generators": [[...], ...], "bounds": [...]}.
Json to_json(const SymmetricGAP& g);
SymmetricGAP gap_from_json(const Json& j);

/// An array of ambient vectors; bare scalars are read as 1-vectors. Also
/// accepts {"values": [...]}.
std::vector<Vec> values_from_json(const Json& j);

Json to_json(const CoverResult& r);
Json to_json(const RepairWitness& w);
Json to_json(const MatrixRepair& r);
Json to_json(const TensorRepair& r);
Json to_json(const Verdict& v);
Json to_json(const PointProbabilityReport& r);
Json to_json(const TupleCountingReport& r);
Json to_json(const ValueDistribution& d);

Json read_json(std::istream& in);
/// "-" reads standard input.
Json read_json_file(const std::string& path);

}  // namespace polylo
