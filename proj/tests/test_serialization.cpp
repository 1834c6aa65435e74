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

#include <filesystem>
#include <fstream>

#include "gtest/gtest.h"

#include "opsys/errors.hpp"
#include "opsys/random.hpp"

using namespace opsys;

namespace {

bool same_span(const MatrixOperatorSystem& a, const MatrixOperatorSystem& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
  for (const auto& x : a.basis())
    if (!b.contains(x.matrix())) return false;
  return true;
}

}  // namespace

TEST(matrix_json, round_trip_and_real_shorthand) {
  Rng rng(113);
  const ComplexMatrix m = random_gaussian(3, 2, rng);
  EXPECT_EQ((matrix_from_json(matrix_to_json(m)) - m).norm(), 0.0);
  const ComplexMatrix r = matrix_from_json(Json::parse("[[1, [0, 2]], [[0, -2], 3]]"));
  EXPECT_EQ(r(0, 1), Complex(0, 2));
  EXPECT_EQ(r(1, 1), Complex(3, 0));
}

TEST(matrix_json, malformed_inputs) {
  EXPECT_THROW(matrix_from_json(Json::parse("[]")), ParseError);
  EXPECT_THROW(matrix_from_json(Json::parse("[[1, 2], [3]]")), ParseError);
  EXPECT_THROW(matrix_from_json(Json::parse("[[\"a\"]]")), ParseError);
  EXPECT_THROW(matrix_from_json(Json::parse("[[[1, 2, 3]]]")), ParseError);
}

TEST(system_json, round_trip_preserves_span) {
  for (const auto& sys : {MatrixOperatorSystem::full(2), MatrixOperatorSystem::diagonal(3),
                          graph_system(Graph::path(4))}) {
    const auto back = system_from_json(system_to_json(sys));
    EXPECT_TRUE(same_span(sys, back));
    EXPECT_EQ(back.label(), sys.label());
  }
  const auto gen = system_from_json(Json::parse(R"({"ambient_dim": 2, "generators": [[[0, 1], [0, 0]]]})"));
  EXPECT_EQ(gen.dim(), 3);
  EXPECT_THROW(system_from_json(Json::parse(R"({"generators": []})")), ParseError);
  EXPECT_THROW(system_from_json(Json::parse(R"({"ambient_dim": 2, "generators": [[[1]]]})")), ParseError);
}

TEST(graph_json, round_trip_and_edge_list) {
  const Graph g(4, {{1, 2}, {2, 3}, {1, 4}});
  EXPECT_EQ(graph_from_json(graph_to_json(g)), g);
  EXPECT_EQ(graph_from_edge_list("# square minus an edge\n4\n1 2\n2 3  # middle\n1 4\n"), g);
  EXPECT_EQ(graph_from_edge_list("3"), Graph(3, {}));
  EXPECT_THROW(graph_from_edge_list(""), ParseError);
  EXPECT_THROW(graph_from_edge_list("3 1"), ParseError);
  EXPECT_THROW(graph_from_edge_list("3 1 x"), ParseError);
  EXPECT_THROW(graph_from_edge_list("3 1 1"), ParseError);
  EXPECT_THROW(graph_from_json(Json::parse(R"({"n": 3, "edges": [[1, 2, 3]]})")), ParseError);
  EXPECT_THROW(graph_from_json(Json::parse(R"({"n": 2, "edges": [[1, 5]]})")), ParseError);
}

TEST(level_element_json, forms) {
  const auto x = level_element_from_json(Json::parse("[[2, 2.5], [2.5, 2]]"), 2);
  EXPECT_EQ(x.level(), 1);
  const auto y = level_element_from_json(level_element_to_json(LevelElement::unit(2, 2)), 2);
  EXPECT_EQ(y.level(), 2);
  EXPECT_EQ((y.block().matrix() - ComplexMatrix::Identity(4, 4)).norm(), 0.0);
  EXPECT_THROW(level_element_from_json(Json::parse("[[1, 0, 0], [0, 1, 0], [0, 0, 1]]"), 2), ParseError);
  EXPECT_THROW(level_element_from_json(Json::parse("[[1, 1], [0, 1]]"), 2), ParseError);
}

TEST(map_json, round_trip_preserves_action) {
  Rng rng(127);
  for (const auto& phi : {transpose_map(2), diagonal_expectation(3), identity_map(graph_system(Graph::path(3)))}) {
    const LinearMatrixMap back = map_from_json(map_to_json(phi));
    EXPECT_EQ(back.target_dim(), phi.target_dim());
    for (int trial = 0; trial < 5; ++trial) {
      const HermitianMatrix x = random_element(phi.domain(), rng);
      EXPECT_LE((back(x.matrix()) - phi(x.matrix())).norm(), 1e-10);
    }
  }
  Json broken = map_to_json(transpose_map(2));
  broken["source_basis"][0] = matrix_to_json(2.0 * ComplexMatrix::Identity(2, 2));
  EXPECT_THROW(map_from_json(broken), ParseError);
}

TEST(coproduct_json, round_trip_and_dimension_check) {
  const auto cp = build_coproduct(graph_system(Graph::path(3)), MatrixOperatorSystem::full(3));
  const Json j = coproduct_to_json(cp);
  const auto back = coproduct_from_json(j);
  EXPECT_EQ(back.dim(), cp.dim());
  EXPECT_TRUE(same_span(back.coset_space(), cp.coset_space()));
  Json wrong = j;
  wrong["dim"] = cp.dim() + 1;
  EXPECT_THROW(coproduct_from_json(wrong), ParseError);
}

TEST(files, read_write_and_errors) {
  const auto dir = std::filesystem::temp_directory_path() / "opsys_serialization_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "graph.json";
  write_json_file(path, graph_to_json(Graph::path(3)));
  EXPECT_EQ(graph_from_json(read_json_file(path)), Graph::path(3));
  EXPECT_THROW(read_json_file(dir / "missing.json"), ParseError);
  write_json_file(dir / "bad.json", Json("x"));
  {
    std::ofstream out(dir / "bad.json");
    out << "{ not json";
  }
  EXPECT_THROW(read_json_file(dir / "bad.json"), ParseError);
  std::filesystem::remove_all(dir);
}
