#pragma once

#include "sklab/invtensor.hpp"
#include "sklab/poisson.hpp"
#include "sklab/rational.hpp"
#include "sklab/sklyanin.hpp"
#include "sklab/walls.hpp"

#include <json.hpp>

#include <string>

namespace sklab {

using json = nlohmann::ordered_json;

/// "RE,IM" (or a single real number).
cplx parse_complex(const std::string& text);

/// Rational from a JSON string ("p/q", integer or decimal) or number. Numbers
/// that are not integers are taken at their exact binary value.
Rational rational_from_json(const json& j);

/// {d, r, x: [re, im], rows: [{i, j, terms: [{n, a, b, coeff_re, coeff_im}]}], rank}
json relations_to_json(const RelationSystem& sys, int rank);

/// {d, r, entries: [{a, b, c, e, re, im}], richardson_error, extraction_step}.
/// Only a < b, c <= e and nonzero entries are written.
json poisson_to_json(const PoissonTensor& tensor);
PoissonTensor poisson_from_json(const json& j);

/// {dim_g, dim_V, bracket: [[[...]]], action: [[[...]]]} with "p/q" strings.
json rep_to_json(const LieRepData& rep);
LieRepData rep_from_json(const json& j);

/// {dim_g, t: [[...]]} with "p/q" strings.
json tensor_to_json(const SymTensor& t);
SymTensor tensor_from_json(const json& j);

json walls_to_json(const WallReport& report);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

} // namespace sklab
