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

#include "opsys/serialization.hpp"

#include <fstream>
#include <sstream>

#include "opsys/errors.hpp"

namespace opsys {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("field \"") + key + "\": " + e.what());
  }
}

Json matrices_to_json(const std::vector<HermitianMatrix>& v) {
  Json out = Json::array();
  for (const auto& h : v) out.push_back(matrix_to_json(h.matrix()));
  return out;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    throw ParseError("matrix must be a non-empty array of non-empty rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError("matrix rows have differing lengths");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& z = row[static_cast<size_t>(c)];
      if (z.is_number()) {
        m(r, c) = z.get<double>();
      } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
        m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
      } else {
        throw ParseError("matrix entry must be a number or an [re, im] pair");
      }
    }
  }
  return m;
}

Json system_to_json(const MatrixOperatorSystem& sys) {
  return Json{{"ambient_dim", sys.ambient_dim()},
              {"label", sys.label()},
              {"generators", matrices_to_json(sys.basis())}};
}

MatrixOperatorSystem system_from_json(const Json& j, const Tolerance& tol) {
  const int n = field<int>(j, "ambient_dim");
  if (n < 1) throw ParseError("ambient_dim must be positive");
  const std::string label = j.contains("label") ? field<std::string>(j, "label") : "";
  std::vector<ComplexMatrix> gens;
  if (j.contains("generators")) {
    if (!j["generators"].is_array()) throw ParseError("generators must be an array");
    for (const auto& g : j["generators"]) gens.push_back(matrix_from_json(g));
  }
  try {
    return make_system(n, gens, label, tol);
  } catch (const ShapeMismatch& e) {
    throw ParseError(e.what());
  }
}

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [i, j] : g.edges()) edges.push_back({i, j});
  return Json{{"n", g.vertex_count()}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) {
  const int n = field<int>(j, "n");
  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges")) {
    const auto raw = field<std::vector<std::vector<int>>>(j, "edges");
    for (const auto& e : raw) {
      if (e.size() != 2) throw ParseError("edge must be a pair [i, j]");
      edges.emplace_back(e[0], e[1]);
    }
  }
  try {
    return Graph(n, edges);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

Graph graph_from_edge_list(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  std::vector<int> tokens;
  while (std::getline(lines, line)) {
    line = line.substr(0, line.find('#'));
    std::istringstream words(line);
    std::string w;
    while (words >> w) {
      try {
        size_t used = 0;
        tokens.push_back(std::stoi(w, &used));
        if (used != w.size()) throw ParseError("bad token '" + w + "' in edge list");
      } catch (const std::logic_error&) {
        throw ParseError("bad token '" + w + "' in edge list");
      }
    }
  }
  if (tokens.empty() || tokens.size() % 2 != 1) {
    throw ParseError("edge list needs a vertex count followed by vertex pairs");
  }
  std::vector<std::pair<int, int>> edges;
  for (size_t i = 1; i + 1 < tokens.size(); i += 2) edges.emplace_back(tokens[i], tokens[i + 1]);
  try {
    return Graph(tokens[0], edges);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

LevelElement level_element_from_json(const Json& j, int n) {
  ComplexMatrix block;
  int level = 0;
  if (j.is_object()) {
    block = matrix_from_json(field<Json>(j, "block"));
    level = j.contains("level") ? field<int>(j, "level") : 0;
  } else {
    block = matrix_from_json(j);
  }
  if (block.rows() % n != 0) throw ParseError("level element size is not a multiple of n");
  if (level == 0) level = static_cast<int>(block.rows()) / n;
  try {
    return LevelElement(level, n, HermitianMatrix(block));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Json level_element_to_json(const LevelElement& x) {
  return Json{{"level", x.level()}, {"block", matrix_to_json(x.block().matrix())}};
}

Json map_to_json(const LinearMatrixMap& phi) {
  Json images = Json::array();
  for (const auto& img : phi.images()) images.push_back(matrix_to_json(img));
  return Json{{"source_dim", phi.source_dim()},
              {"target_dim", phi.target_dim()},
              {"source_basis", matrices_to_json(phi.domain().basis())},
              {"images", images},
              {"action", matrix_to_json(phi.action_matrix())}};
}

LinearMatrixMap map_from_json(const Json& j) {
  const int n = field<int>(j, "source_dim");
  const int m = field<int>(j, "target_dim");
  const Json basis_json = field<Json>(j, "source_basis");
  const Json images_json = field<Json>(j, "images");
  if (!basis_json.is_array() || !images_json.is_array() || basis_json.size() != images_json.size()) {
    throw ParseError("map needs matching source_basis and images arrays");
  }
  std::vector<HermitianMatrix> declared;
  std::vector<ComplexMatrix> declared_images;
  try {
    for (const auto& b : basis_json) declared.emplace_back(matrix_from_json(b));
    for (const auto& img : images_json) declared_images.push_back(matrix_from_json(img));
    for (size_t a = 0; a < declared.size(); ++a) {
      for (size_t b = 0; b < declared.size(); ++b) {
        const double g = real_inner(declared[a].matrix(), declared[b].matrix());
        if (std::abs(g - (a == b ? 1.0 : 0.0)) > 1e-8) {
          throw ParseError("source_basis is not orthonormal");
        }
      }
    }
    MatrixOperatorSystem domain = MatrixOperatorSystem::from_hermitian_span(n, declared, "");
    if (domain.dim() != static_cast<int>(declared.size())) {
      throw ParseError("source_basis is linearly dependent");
    }
    // Re-express the images in the rebuilt basis: B'_j = sum_k <B_k, B'_j> B_k.
    std::vector<ComplexMatrix> images;
    for (const auto& bp : domain.basis()) {
      ComplexMatrix img = ComplexMatrix::Zero(m, m);
      for (size_t k = 0; k < declared.size(); ++k) {
        img += real_inner(declared[k].matrix(), bp.matrix()) * declared_images[k];
      }
      images.push_back(std::move(img));
    }
    return LinearMatrixMap(std::move(domain), m, std::move(images));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Json coproduct_to_json(const CoproductSystem& cp) {
  return Json{{"n", cp.n()},
              {"dim", cp.dim()},
              {"left", system_to_json(cp.left())},
              {"right", system_to_json(cp.right())},
              {"coset_basis", matrices_to_json(cp.coset_basis())}};
}

CoproductSystem coproduct_from_json(const Json& j, const Tolerance& tol) {
  const MatrixOperatorSystem left = system_from_json(field<Json>(j, "left"), tol);
  const MatrixOperatorSystem right = system_from_json(field<Json>(j, "right"), tol);
  CoproductSystem cp = CoproductSystem::build(left, right, tol);
  if (j.contains("dim") && field<int>(j, "dim") != cp.dim()) {
    throw ParseError("stored coproduct dimension " + std::to_string(field<int>(j, "dim")) +
                     " does not match rebuilt dimension " + std::to_string(cp.dim()));
  }
  return cp;
}

Json outcome_to_json(const FeasibilityOutcome& o) {
  Json out{{"verdict", to_string(o.verdict)}, {"iterations", o.iterations}, {"residual", o.residual}};
  if (o.witness) out["witness"] = matrix_to_json(o.witness->matrix());
  if (o.gap) out["gap"] = *o.gap;
  return out;
}

Json c_cone_to_json(const CConeResult& r) {
  Json trace = Json::array();
  for (const auto& step : r.trace) {
    Json s = outcome_to_json(step.outcome);
    s["eps"] = step.eps;
    trace.push_back(std::move(s));
  }
  return Json{{"verdict", to_string(r.verdict)}, {"trace", trace}};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace opsys
