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

#include "opsys/random.hpp"

#include <cmath>

namespace opsys {

ComplexMatrix random_gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

HermitianMatrix random_hermitian(int n, Rng& rng) {
  const ComplexMatrix g = random_gaussian(n, n, rng);
  return HermitianMatrix((g + g.adjoint()) * 0.5);
}

HermitianMatrix random_element(const MatrixOperatorSystem& sys, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = sys.ambient_dim();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (const auto& b : sys.basis()) m += normal(rng) * b.matrix();
  return HermitianMatrix(m);
}

HermitianMatrix random_level_hermitian(const MatrixOperatorSystem& sys, int level, Rng& rng) {
  const int n = sys.ambient_dim();
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix m = ComplexMatrix::Zero(level * n, level * n);
  for (int i = 0; i < level; ++i) {
    m.block(i * n, i * n, n, n) = random_element(sys, rng).matrix();
    for (int j = i + 1; j < level; ++j) {
      ComplexMatrix off = ComplexMatrix::Zero(n, n);
      for (const auto& b : sys.basis()) {
        const double re = normal(rng);
        const double im = normal(rng);
        off += Complex(re, im) * b.matrix();
      }
      m.block(i * n, j * n, n, n) = off;
      m.block(j * n, i * n, n, n) = off.adjoint();
    }
  }
  return HermitianMatrix(m);
}

HermitianMatrix random_psd_level(const MatrixOperatorSystem& sys, int level, Rng& rng,
                                 const Tolerance& tol) {
  const int kn = level * sys.ambient_dim();
  std::uniform_int_distribution<int> rank_dist(1, kn);
  const ComplexMatrix v = random_gaussian(kn, rank_dist(rng), rng);
  const ComplexMatrix vv = v * v.adjoint();
  if ((vv - project_level(sys, vv)).norm() <= tol.subspace_eps * (1.0 + vv.norm())) {
    return HermitianMatrix(vv);
  }
  const HermitianMatrix h = random_level_hermitian(sys, level, rng);
  std::uniform_real_distribution<double> margin(0.0, 0.1);
  return h.shifted(-min_eigenvalue(h) + margin(rng));
}

}  // namespace opsys
