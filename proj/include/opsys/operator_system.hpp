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

#include <cstdint>
#include <string>
#include <vector>

#include "opsys/matrix_kernel.hpp"

namespace opsys {

/// Largest matrix level k accepted for M_k(S) computations.
inline constexpr int kMaxLevel = 4;

/// A self-adjoint unital subspace S of M_n.
///
/// Stored as a basis of the Hermitian part S_h, orthonormal for the real
/// Frobenius inner product Re tr(A* B). Such a basis is also orthonormal
/// for the complex inner product, so its complex span is S and
/// dim_C(S) == dim_R(S_h) == basis().size().
class MatrixOperatorSystem {
 public:
  /// Real Gram-Schmidt over the Hermitian matrices in `spanning`. Throws
  /// InvalidArgument unless I_n lies in their real span.
  static MatrixOperatorSystem from_hermitian_span(int n, const std::vector<HermitianMatrix>& spanning,
                                                  std::string label, const Tolerance& tol = {});
  static MatrixOperatorSystem full(int n);
  static MatrixOperatorSystem diagonal(int n);

  int ambient_dim() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<HermitianMatrix>& basis() const { return basis_; }
  const std::string& label() const { return label_; }
  bool is_algebra() const { return algebra_; }

  MatrixOperatorSystem with_label(std::string label) const;
  MatrixOperatorSystem as_algebra() const;

  /// Complex coordinates <B_k, M> against the basis.
  std::vector<Complex> coordinates(const ComplexMatrix& m) const;
  /// Orthogonal projection of M onto the complex span.
  ComplexMatrix project(const ComplexMatrix& m) const;
  /// Frobenius distance from M to the complex span.
  double residual(const ComplexMatrix& m) const;
  /// residual(M) <= subspace_eps (1 + ||M||_F). Throws ShapeMismatch.
  bool contains(const ComplexMatrix& m, const Tolerance& tol = {}) const;

 private:
  MatrixOperatorSystem() = default;

  int n_ = 0;
  std::vector<HermitianMatrix> basis_;
  std::string label_;
  bool algebra_ = false;
};

/// D_n, the diagonal matrices of M_n.
struct DiagonalAlgebra {
  int dim = 0;

  /// diag(d) as an n x n matrix.
  ComplexMatrix element(const std::vector<Complex>& d) const;
};

/// Element [s_ij] of M_k(S) stored as its kn x kn block matrix.
class LevelElement {
 public:
  /// Throws ShapeMismatch if block.dim() != level * ambient_dim and
  /// InvalidArgument unless 1 <= level <= kMaxLevel.
  LevelElement(int level, int ambient_dim, HermitianMatrix block);

  /// The matrix order unit e (x) I_k, i.e. I_{kn}.
  static LevelElement unit(int level, int ambient_dim);

  int level() const { return level_; }
  int ambient_dim() const { return n_; }
  const HermitianMatrix& block() const { return block_; }
  /// The n x n entry s_ij (zero-indexed).
  ComplexMatrix entry(int i, int j) const;
  /// Every entry s_ij lies in the complex span of `sys`.
  bool belongs_to(const MatrixOperatorSystem& sys, const Tolerance& tol = {}) const;

 private:
  int level_;
  int n_;
  HermitianMatrix block_;
};

/// Real Gram-Schmidt basis of the real span of Hermitian matrices,
/// orthonormal for Re tr(A* B). Candidates whose remainder is below
/// subspace_eps (1 + ||candidate||_F) are dropped.
std::vector<HermitianMatrix> real_orthonormal_basis(const std::vector<HermitianMatrix>& spanning,
                                                    const Tolerance& tol = {});

/// Frobenius distance from M to the complex span of an orthonormal
/// Hermitian basis.
double span_residual(const std::vector<HermitianMatrix>& onb, const ComplexMatrix& m);

/// Operator system spanned by I_n, the generators and their adjoints.
MatrixOperatorSystem make_system(int n, const std::vector<ComplexMatrix>& generators,
                                 std::string label = "", const Tolerance& tol = {});

bool contains(const MatrixOperatorSystem& sys, const ComplexMatrix& m, const Tolerance& tol = {});

/// inf{r >= 0 : r I +- v >= 0}, which for a concrete system with unit I_n
/// is the spectral norm of v. Throws NotInSystem.
double order_norm(const MatrixOperatorSystem& sys, const HermitianMatrix& v,
                  const Tolerance& tol = {});

/// D_n-bimodule test. The span condition E_ii b E_jj in S is checked over
/// every basis element and pair of diagonal units; A-compatibility of the
/// cones (X P X* in M_m(S)^+ for X in M_{m,k}(D_n), P in M_k(S)^+, k, m <= 2)
/// is sampled `trials` times.
bool bimodule_check(const MatrixOperatorSystem& sys, const DiagonalAlgebra& alg, int trials,
                    std::uint64_t seed = 42, const Tolerance& tol = {});

/// Positivity of a level element in M_k(S)^+. Throws NotInSystem.
bool level_positive(const MatrixOperatorSystem& sys, const LevelElement& x,
                    const Tolerance& tol = {});

/// Blockwise projection of a kn x kn matrix onto M_k(S).
ComplexMatrix project_level(const MatrixOperatorSystem& sys, const ComplexMatrix& block);

}  // namespace opsys
