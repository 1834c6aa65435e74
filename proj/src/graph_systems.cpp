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

#include "opsys/graph_systems.hpp"

#include <numeric>
#include <string>

#include "opsys/errors.hpp"

namespace opsys {

Graph::Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges) : n_(vertex_count) {
  if (vertex_count < 1) throw InvalidArgument("graph needs at least one vertex");
  for (auto [i, j] : edges) {
    if (i == j) throw InvalidArgument("self-loop at vertex " + std::to_string(i));
    if (i < 1 || j < 1 || i > n_ || j > n_) {
      throw InvalidArgument("edge (" + std::to_string(i) + "," + std::to_string(j) +
                            ") has an endpoint outside 1.." + std::to_string(n_));
    }
    edges_.insert(i < j ? std::pair{i, j} : std::pair{j, i});
  }
}

Graph Graph::complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) e.emplace_back(i, j);
  }
  return Graph(n, e);
}

Graph Graph::path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

bool Graph::connected() const {
  std::vector<int> parent(static_cast<size_t>(n_ + 1));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)];
    return x;
  };
  int components = n_;
  for (auto [i, j] : edges_) {
    const int a = find(i);
    const int b = find(j);
    if (a != b) {
      parent[static_cast<size_t>(a)] = b;
      --components;
    }
  }
  return components == 1;
}

MatrixOperatorSystem graph_system(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<ComplexMatrix> units;
  for (int i = 0; i < n; ++i) units.push_back(matrix_unit(n, i, i));
  for (auto [i, j] : g.edges()) units.push_back(matrix_unit(n, i - 1, j - 1));
  return make_system(n, units, "S_G(n=" + std::to_string(n) + ",|E|=" +
                                   std::to_string(g.edges().size()) + ")");
}

LinearMatrixMap diagonal_expectation(int n) {
  return LinearMatrixMap::from_function(MatrixOperatorSystem::full(n), n,
                                        [](const ComplexMatrix& x) -> ComplexMatrix {
                                          return x.diagonal().asDiagonal();
                                        });
}

MatrixOperatorSystem generated_algebra(const MatrixOperatorSystem& sys, const Tolerance& tol) {
  const int n = sys.ambient_dim();
  MatrixOperatorSystem current = sys;
  for (int round = 0; round <= n * n; ++round) {
    std::vector<ComplexMatrix> products;
    const auto& b = current.basis();
    for (size_t i = 0; i < b.size(); ++i) {
      products.push_back(b[i].matrix());
      for (size_t j = 0; j < b.size(); ++j) products.push_back(b[i].matrix() * b[j].matrix());
    }
    MatrixOperatorSystem next = make_system(n, products, "C*(" + sys.label() + ")", tol);
    if (next.dim() < current.dim()) {
      throw NumericalFailure("generated_algebra: dimension dropped from " +
                             std::to_string(current.dim()) + " to " + std::to_string(next.dim()));
    }
    if (next.dim() == current.dim()) {
      if (!is_closed_under_products(next, tol)) {
        throw NumericalFailure("generated_algebra: dimension settled but span is not closed");
      }
      return next.as_algebra();
    }
    current = std::move(next);
  }
  throw NumericalFailure("generated_algebra: dimension did not settle within " +
                         std::to_string(n * n) + " rounds");
}

bool is_closed_under_products(const MatrixOperatorSystem& sys, const Tolerance& tol) {
  const auto& b = sys.basis();
  for (const auto& x : b) {
    if (!sys.contains(x.matrix().adjoint(), tol)) return false;
    for (const auto& y : b) {
      if (!sys.contains(x.matrix() * y.matrix(), tol)) return false;
    }
  }
  return true;
}

}  // namespace opsys
