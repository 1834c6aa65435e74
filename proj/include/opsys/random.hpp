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

// Random generators for elements, level elements and positive elements of
// operator systems. All take an explicit engine so results are
// reproducible from a seed.

#include <random>

#include "opsys/matrix_kernel.hpp"
#include "opsys/operator_system.hpp"

namespace opsys {

using Rng = std::mt19937_64;

/// Entries i.i.d. standard complex Gaussian (real and imaginary parts N(0, 1/2)).
ComplexMatrix random_gaussian(int rows, int cols, Rng& rng);

/// (G + G*)/2 for a Gaussian G.
HermitianMatrix random_hermitian(int n, Rng& rng);

/// Real Gaussian combination of the system's Hermitian basis.
HermitianMatrix random_element(const MatrixOperatorSystem& sys, Rng& rng);

/// Hermitian element of M_k(S): Hermitian diagonal blocks, complex
/// combinations of the basis off the diagonal.
HermitianMatrix random_level_hermitian(const MatrixOperatorSystem& sys, int level, Rng& rng);

/// Random element of the cone M_k(S)^+.
///
/// First tries V V* with V a Gaussian kn x r matrix of random rank r; that
/// product is kept when it already lies in M_k(S) (always the case for
/// S = M_n). Otherwise a random Hermitian element of M_k(S) is shifted by
/// its smallest eigenvalue plus a random margin in [0, 0.1), which stays
/// inside M_k(S) because I_{kn} does.
HermitianMatrix random_psd_level(const MatrixOperatorSystem& sys, int level, Rng& rng,
                                 const Tolerance& tol = {});

}  // namespace opsys
