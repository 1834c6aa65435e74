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

#include <set>
#include <utility>

#include "opsys/cp_maps.hpp"
#include "opsys/operator_system.hpp"

namespace opsys {

/// Undirected simple graph on vertices 1..n.
class Graph {
 public:
  /// Edges are 1-indexed and unordered. Throws InvalidArgument on
  /// self-loops or endpoints outside 1..n.
  Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges);

  static Graph complete(int n);
  static Graph path(int n);

  int vertex_count() const { return n_; }
  /// Normalized as (i, j) with i < j.
  const std::set<std::pair<int, int>>& edges() const { return edges_; }
  bool connected() const;

  bool operator==(const Graph&) const = default;

 private:
  int n_;
  std::set<std::pair<int, int>> edges_;
};

/// S_G = span{E_ii} + span{E_ij, E_ji : {i, j} in E}, complex dimension n + 2|E|.
MatrixOperatorSystem graph_system(const Graph& g);

/// The conditional expectation M_n -> D_n that zeroes off-diagonal entries.
LinearMatrixMap diagonal_expectation(int n);

/// The C*-algebra generated by `sys` inside M_n, by closing the span under
/// products until the dimension stops growing. For graph systems this is
/// the C*-envelope. Throws NumericalFailure if the dimension does not
/// settle within n^2 rounds.
MatrixOperatorSystem generated_algebra(const MatrixOperatorSystem& sys, const Tolerance& tol = {});

/// Closed under products and adjoints, within subspace_eps.
bool is_closed_under_products(const MatrixOperatorSystem& sys, const Tolerance& tol = {});

}  // namespace opsys
