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

// The D_n-coproduct of operator D_n-systems S, T in M_n, realized as the
// quotient (S (+) T) / J with J = {a (+) -a : a in D_n}.
//
// S (+) T lives block-diagonally in M_2n. Cosets are represented by their
// Frobenius-orthogonal projection onto the complement of J, so q is an
// explicit linear map and coset equality is a norm check. Level-k elements
// use the canonical shuffle M_k(S (+) T) = M_k(S) (+) M_k(T): a pair of
// kn x kn blocks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opsys/cp_maps.hpp"
#include "opsys/feasibility.hpp"
#include "opsys/operator_system.hpp"

namespace opsys {

/// Canonical representative of a coset in M_k((S (+) T) / J).
struct CosetElement {
  int level = 1;
  HermitianMatrix left;   // in M_k(S)
  HermitianMatrix right;  // in M_k(T)

  /// Frobenius distance between canonical representatives.
  double distance(const CosetElement& o) const;
  /// Level 1 only: left (+) right in M_2n.
  ComplexMatrix as_direct_sum() const;
};

class CoproductSystem {
 public:
  /// Throws IncompatibleSystems unless S and T share n and both pass
  /// bimodule_check over D_n.
  static CoproductSystem build(const MatrixOperatorSystem& left, const MatrixOperatorSystem& right,
                               const Tolerance& tol = {}, int bimodule_trials = 20,
                               std::uint64_t seed = 42);

  int n() const { return n_; }
  const MatrixOperatorSystem& left() const { return left_; }
  const MatrixOperatorSystem& right() const { return right_; }
  /// Orthonormal basis {(E_ii (+) -E_ii) / sqrt(2)} of J.
  const std::vector<HermitianMatrix>& kernel_basis() const { return kernel_; }
  /// J-orthocomplement inside S (+) T, as a subspace of M_2n.
  const MatrixOperatorSystem& coset_space() const { return cosets_; }
  const std::vector<HermitianMatrix>& coset_basis() const { return cosets_.basis(); }
  /// Complex dimension of the quotient.
  int dim() const { return cosets_.dim(); }

  /// q at level 1 for x in M_2n: x minus its J component.
  ComplexMatrix quotient(const ComplexMatrix& x) const;
  /// q^(k) on the shuffled pair (s, t). Throws NotInSystem unless
  /// s in M_k(S) and t in M_k(T).
  CosetElement quotient(const LevelElement& s, const LevelElement& t,
                        const Tolerance& tol = {}) const;
  CosetElement unit(int level) const;

  /// The D_n action a . q(s (+) t) . b = q(a s b (+) a t b) on the coset space.
  DiagonalAction action() const;

  /// Shuffle a coset element into a k x k block matrix with 2n x 2n entries
  /// s_ij (+) t_ij, and back.
  ComplexMatrix to_blocks(const CosetElement& x) const;
  CosetElement from_blocks(const ComplexMatrix& blocks) const;

 private:
  CoproductSystem(MatrixOperatorSystem left, MatrixOperatorSystem right,
                  std::vector<HermitianMatrix> kernel, MatrixOperatorSystem cosets)
      : n_(left.ambient_dim()),
        left_(std::move(left)),
        right_(std::move(right)),
        kernel_(std::move(kernel)),
        cosets_(std::move(cosets)) {}

  int n_;
  MatrixOperatorSystem left_;
  MatrixOperatorSystem right_;
  std::vector<HermitianMatrix> kernel_;
  MatrixOperatorSystem cosets_;
};

inline CoproductSystem build_coproduct(const MatrixOperatorSystem& s, const MatrixOperatorSystem& t,
                                       const Tolerance& tol = {}) {
  return CoproductSystem::build(s, t, tol);
}

/// Is the coset of s (+) t in D_k? Solved with eps_shift = 0.
FeasibilityOutcome d_cone_member(const CoproductSystem& cp, const LevelElement& s,
                                 const LevelElement& t, const SolveOptions& opts = {});
FeasibilityOutcome d_cone_member(const CoproductSystem& cp, const CosetElement& x,
                                 const SolveOptions& opts = {});

enum class ConeVerdict { Member, NonMember, Boundary, Undecided };

std::string to_string(ConeVerdict v);

struct LadderStep {
  double eps;
  FeasibilityOutcome outcome;
};

struct CConeResult {
  ConeVerdict verdict = ConeVerdict::Undecided;
  std::vector<LadderStep> trace;
};

std::vector<double> default_eps_ladder();

/// Archimedean cone C_k: member iff every ladder step (eps_shift = eps) is
/// Feasible. Stops at the first Infeasible step.
CConeResult c_cone_member(const CoproductSystem& cp, const CosetElement& x,
                          const std::vector<double>& ladder = default_eps_ladder(),
                          const SolveOptions& opts = {});
CConeResult c_cone_member(const CoproductSystem& cp, const LevelElement& s, const LevelElement& t,
                          const std::vector<double>& ladder = default_eps_ladder(),
                          const SolveOptions& opts = {});

/// D_k membership with an honest boundary band: Member when x - slack*unit
/// is still Feasible, NonMember when x + slack*unit is still Infeasible,
/// Boundary when the two shifted answers straddle the cone boundary.
ConeVerdict classify_d_cone(const CoproductSystem& cp, const CosetElement& x, double slack,
                            const SolveOptions& opts = {});

/// i1(u) = 2 q(u (+) 0). Throws NotInSystem.
CosetElement embed_left(const CoproductSystem& cp, const LevelElement& u,
                        const Tolerance& tol = {});
/// i2(u) = 2 q(0 (+) u). Throws NotInSystem.
CosetElement embed_right(const CoproductSystem& cp, const LevelElement& u,
                         const Tolerance& tol = {});

/// The map Phi(q(s (+) t)) = (phi1(s) + phi2(t)) / 2 on the coset space.
///
/// Requires phi1 on S and phi2 on T with a common target, both unital,
/// and agreeing on D_n (else IllConditioned). Complete positivity of the
/// inputs is re-checked by sampling at levels 1 and 2 only; a failure
/// throws InvalidArgument.
LinearMatrixMap universal_map(const CoproductSystem& cp, const LinearMatrixMap& phi1,
                              const LinearMatrixMap& phi2, int trials = 100,
                              std::uint64_t seed = 42);

/// Positive-cone sampler for the coset domain at level k: q^(k) of a PSD
/// pair, which covers D_k exactly.
PositiveSampler coset_positive_sampler(const CoproductSystem& cp, const Tolerance& tol = {});

struct IntersectionReport {
  bool holds = false;
  int left_dim = 0;
  int right_dim = 0;
  int intersection_dim = 0;
};

/// Checks i1(S) and i2(T) meet exactly in the copy of D_n.
IntersectionReport intersection_check(const CoproductSystem& cp, const Tolerance& tol = {});

struct RSubsystemReport {
  int r_dim = 0;           // dim of R = {s (+) t : E(s) = E(t)}
  int coproduct_dim = 0;
  int q_rank = 0;          // rank of q restricted to R
  bool bijection = false;  // r_dim == q_rank == coproduct_dim
  FeasibilityOutcome membership;  // coset of s (+) t in D_1
  bool given_witness_valid = false;  // A = I_2: s + A >= 0 and t - A >= 0
  double direct_sum_min_eigenvalue = 0.0;
  bool direct_sum_psd = true;
  /// bijection, membership Feasible, and s (+) t not PSD: the inverse of
  /// q restricted to R is not positive.
  bool certified = false;
};

/// Dimension of R and rank of q on R for a built coproduct (uses the
/// diagonal expectation on both sides).
RSubsystemReport r_subsystem_report(const CoproductSystem& cp, const Tolerance& tol = {});

/// Fixed demonstration on M_2 (+)_{D_2} M_2 with s = [[2, 5/2], [5/2, 2]],
/// t = 2 I_2.
RSubsystemReport r_subsystem_demo();

}  // namespace opsys
