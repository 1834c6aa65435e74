// Copyright 2026 The opsys Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON formats. Complex numbers are [re, im] pairs and matrices are nested
// row-major arrays of them. Malformed input raises ParseError.
//
//   system:     {"ambient_dim": n, "label": str, "generators": [matrix, ...]}
//   graph:      {"n": int, "edges": [[i, j], ...]}   (1-indexed)
//   level elem: {"level": k, "block": matrix}  or a bare kn x kn matrix
//   map:        {"source_dim": n, "target_dim": m, "source_basis": [...],
//                "images": [...], "action": m^2 x dim matrix}
//   coproduct:  {"n": n, "dim": d, "left": system, "right": system,
//                "coset_basis": [...]}

#include <filesystem>
#include <string>

#include <json.hpp>

#include "opsys/coproduct.hpp"
#include "opsys/cp_maps.hpp"
#include "opsys/feasibility.hpp"
#include "opsys/graph_systems.hpp"
#include "opsys/operator_system.hpp"

namespace opsys {

using Json = nlohmann::json;

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json system_to_json(const MatrixOperatorSystem& sys);
MatrixOperatorSystem system_from_json(const Json& j, const Tolerance& tol = {});

Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);
/// Plain-text edge list: first token n, then pairs "i j" (1-indexed);
/// '#' starts a comment.
Graph graph_from_edge_list(const std::string& text);

/// `n` is the ambient dimension of the owning system.
LevelElement level_element_from_json(const Json& j, int n);
Json level_element_to_json(const LevelElement& x);

Json map_to_json(const LinearMatrixMap& phi);
/// Domain gets the standard D_n action.
LinearMatrixMap map_from_json(const Json& j);

Json coproduct_to_json(const CoproductSystem& cp);
/// Rebuilds from left/right and checks the stored dimension.
CoproductSystem coproduct_from_json(const Json& j, const Tolerance& tol = {});

Json outcome_to_json(const FeasibilityOutcome& o);
Json c_cone_to_json(const CConeResult& r);

Json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace opsys
