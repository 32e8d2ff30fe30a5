#pragma once

#include <string>

#include "json.hpp"

#include "derivation.hpp"
#include "eqmc.hpp"
#include "gqloop.hpp"
#include "structure.hpp"

namespace eqol {

using Json = nlohmann::json;

// IO errors and malformed documents surface as model_error.
Json json_from_file(const std::string& path);
Json json_from_text(const std::string& text);
std::string dump_json(const Json& j);

// Matrices: {"dim": d, "kind": "dense", "rows": [[[re,im], ...], ...]} or
// {"dim": d, "kind": "diagonal", "diag": [w, ...]} where diagonal weights are
// numbers or exact rational strings like "7/16".
ComplexMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const ComplexMatrix& m);

DensityOperator density_from_json(const Json& j);
Json density_to_json(const DensityOperator& rho);

// {"dim": d, "kraus": [matrix, ...]}; an empty list is the zero map.
SuperOperator superop_from_json(const Json& j);
Json superop_to_json(const SuperOperator& e);

Structure structure_from_json(const Json& j);
Json structure_to_json(const Structure& m);

DerivationScript derivation_from_json(const Json& j);

ExogenousQMC chain_from_json(const Json& j);

GeneralizedQuantumLoop loop_from_json(const Json& j);

} // namespace eqol
