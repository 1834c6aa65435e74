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

// Linear maps out of operator systems, and checks for complete positivity
// and the D_n-bimodule property.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "opsys/matrix_kernel.hpp"
#include "opsys/operator_system.hpp"
#include "opsys/random.hpp"

namespace opsys {

/// How D_n sits inside a domain and acts on it from both sides.
///
/// For a D_n-bimodule S in M_n this is just E_ii and E_ii x E_jj. Quotient
/// domains supply their own action (act, then take the canonical coset).
struct DiagonalAction {
  int n = 0;
  /// The element of the domain corresponding to E_ii.
  std::function<ComplexMatrix(int i)> embed;
  /// E_ii . x . E_jj, expressed back in the domain.
  std::function<ComplexMatrix(int i, const ComplexMatrix& x, int j)> act;

  static DiagonalAction standard(int n);
};

/// A complex-linear map phi: S -> M_m, stored by its images of the domain's
/// Hermitian basis. The images must be Hermitian (phi is *-preserving).
class LinearMatrixMap {
 public:
  LinearMatrixMap(MatrixOperatorSystem domain, int target_dim, std::vector<ComplexMatrix> images,
                  std::optional<DiagonalAction> action = std::nullopt);

  static LinearMatrixMap from_function(MatrixOperatorSystem domain, int target_dim,
                                       const std::function<ComplexMatrix(const ComplexMatrix&)>& f,
                                       std::optional<DiagonalAction> action = std::nullopt);

  const MatrixOperatorSystem& domain() const { return domain_; }
  int source_dim() const { return domain_.ambient_dim(); }
  int target_dim() const { return m_; }
  const std::vector<ComplexMatrix>& images() const { return images_; }
  const DiagonalAction& action() const { return action_; }

  /// phi(x). Throws NotInSystem if x is outside the domain.
  ComplexMatrix operator()(const ComplexMatrix& x, const Tolerance& tol = {}) const;
  /// phi applied to the orthogonal projection of x onto the domain.
  ComplexMatrix apply_projected(const ComplexMatrix& x) const;
  /// phi^(k)([x_ij]) = [phi(x_ij)] for a k * source_dim square block.
  ComplexMatrix amplify(const ComplexMatrix& block, const Tolerance& tol = {}) const;

  /// m^2 x dim(S) matrix whose k-th column is the row-major vec of phi(B_k).
  ComplexMatrix action_matrix() const;

 private:
  MatrixOperatorSystem domain_;
  int m_;
  std::vector<ComplexMatrix> images_;
  DiagonalAction action_;
};

LinearMatrixMap identity_map(const MatrixOperatorSystem& sys);
LinearMatrixMap transpose_map(int n);
/// outer o inner. Throws NotInSystem if inner's range leaves outer's domain.
LinearMatrixMap compose(const LinearMatrixMap& outer, const LinearMatrixMap& inner);

bool is_unital(const LinearMatrixMap& phi, double tol = 1e-10);

/// Choi block matrix [phi(E_ij)]. Throws DomainNotFull unless the domain is M_n.
ComplexMatrix choi_matrix(const LinearMatrixMap& phi);
/// Choi criterion for complete positivity.
bool choi_psd(const LinearMatrixMap& phi, const Tolerance& tol = {});

/// Draws an element of the positive cone of M_k(domain) as a k n x k n block.
using PositiveSampler = std::function<ComplexMatrix(int level, Rng& rng)>;

struct KPositivityResult {
  bool passed = true;
  int trials_run = 0;
  /// First positive input P whose image phi^(k)(P) was not PSD.
  std::optional<ComplexMatrix> counterexample;
  double worst_min_eigenvalue = 0.0;
};

/// k-positivity by sampling. Only a necessary condition on proper subspace
/// domains: a pass is evidence, a failure is a certificate.
///
/// Without a sampler, positive inputs come from random_psd_level over the
/// domain, whose cone is inherited from M_kn.
KPositivityResult sampled_kpositive(const LinearMatrixMap& phi, int level, int trials,
                                    std::uint64_t seed = 42, const Tolerance& tol = {},
                                    const PositiveSampler& sampler = {});

/// D_n-bimodule map test against a representation pi: D_n -> M_m given by
/// the images of E_ii. With no representation, pi is the identity when
/// m == n and MissingRepresentation is thrown otherwise.
///
/// Exhaustive over the basis and diagonal unit pairs, then `trials` random
/// combinations; also checks phi(a) == pi(a) phi(1).
bool bimodule_map_check(const LinearMatrixMap& phi, int trials,
                        const std::optional<std::vector<ComplexMatrix>>& representation = std::nullopt,
                        std::uint64_t seed = 42, double tol = 1e-10);

}  // namespace opsys
