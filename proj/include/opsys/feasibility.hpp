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

// Decides: given Hermitian S, T in M_k(M_n), is there a Hermitian
// A in M_k(D_n) with S + A >= 0 and T - A >= 0?

#include <optional>
#include <string>

#include "opsys/matrix_kernel.hpp"

namespace opsys {

struct FeasibilityProblem {
  int level = 1;
  int n = 1;
  HermitianMatrix s_block;
  HermitianMatrix t_block;
  /// Added as eps * I to both blocks before solving.
  double eps_shift = 0.0;

  /// Throws ShapeMismatch unless both blocks are (level * n)-dimensional.
  void validate() const;
};

enum class Verdict { Feasible, Infeasible, Undecided };

std::string to_string(Verdict v);

struct FeasibilityOutcome {
  Verdict verdict = Verdict::Undecided;
  /// A in M_k(D_n) with S' + A and T' - A PSD (Feasible only).
  std::optional<HermitianMatrix> witness;
  /// Distance estimate between the PSD pair cone and the affine witness
  /// set (Infeasible only).
  std::optional<double> gap;
  int iterations = 0;
  /// Last ||x - y|| between the two projection iterates.
  double residual = 0.0;
};

struct SolveOptions {
  int max_iter = 20000;
  double tol = 1e-9;
  /// Consecutive stalled iterations before declaring Infeasible.
  int stall_window = 500;
  /// How often (in iterations) the affine iterate is tested as a witness.
  int check_every = 8;
  int refine_iter = 500;
  Tolerance psd;
};

/// Keeps the entries of a kn x kn matrix that sit on the diagonal of each
/// n x n block, after Hermitian symmetrization: the orthogonal projection
/// onto M_k(D_n)_h.
ComplexMatrix project_block_diagonal(const ComplexMatrix& m, int n);

/// Dykstra alternating projections between {P >= 0} x {Q >= 0} and
/// {(S' + Z, T' - Z) : Z in M_k(D_n)_h}.
///
/// Feasible as soon as the affine iterate passes both PSD tests (checked
/// every `check_every` iterations and whenever the residual drops below
/// tol). Infeasible when min eig(S' + T') certifies a gap above 10 tol, or
/// when the residual stays above 10 tol without moving for `stall_window`
/// iterations. Undecided otherwise.
FeasibilityOutcome solve(const FeasibilityProblem& p, const SolveOptions& opts = {});
FeasibilityOutcome solve(const FeasibilityProblem& p, int max_iter, double tol);

/// Independent oracle for k = 1, n = 2: best-first branch and bound over
/// witnesses diag(d1, d2) in [-R, R]^2, R = max(||S||, ||T||) + 1, starting
/// from a grid x grid partition. Cells are bisected until the closed-form
/// 2x2 PSD test (diagonal >= 0, determinant >= 0) holds exactly at a cell
/// centre, or every cell is excluded by the Lipschitz bound
/// f(centre) + halfwidth < 0 on f(d) = min(lambda_min(S + D), lambda_min(T - D)).
FeasibilityOutcome brute_force_2x2(const HermitianMatrix& s, const HermitianMatrix& t, int grid,
                                   int max_cells = 400000);

}  // namespace opsys
