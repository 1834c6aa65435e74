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

// Dense complex matrix substrate: Hermitian matrices, a cyclic Jacobi
// eigensolver, PSD tests and projections, Frobenius inner products.

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace opsys {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Square complex matrix equal to its conjugate transpose.
///
/// Construction symmetrizes the input as (M + M*)/2. Inputs that are far
/// from Hermitian (||M - M*||_F > 1e-6 (1 + ||M||_F)) are rejected with
/// InvalidArgument, non-square inputs with ShapeMismatch.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m);

  static HermitianMatrix identity(int n);
  static HermitianMatrix zero(int n);
  static HermitianMatrix diagonal(const std::vector<double>& d);
  /// Builds from real symmetric data given row-major, convenient in tests.
  static HermitianMatrix from_real(int n, std::initializer_list<double> entries);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator-() const;
  HermitianMatrix operator*(double s) const;
  /// this + s * I
  HermitianMatrix shifted(double s) const;

 private:
  struct Unchecked {};
  HermitianMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

inline HermitianMatrix operator*(double s, const HermitianMatrix& h) { return h * s; }

/// Numerical slack used by positivity and subspace tests.
///
/// When psd_eps is unset the absolute eigenvalue slack is
/// 1e-9 * (1 + spectral norm of the operand).
struct Tolerance {
  std::optional<double> psd_eps;
  double subspace_eps = 1e-8;

  double psd_slack(double spectral_norm) const;
};

struct EigenDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // unitary, columns match eigenvalues
};

/// Cyclic complex Jacobi. Throws NumericalFailure past the sweep cap.
EigenDecomposition eig_hermitian(const HermitianMatrix& h);
/// Eigenvalues only (ascending); skips the eigenvector accumulation.
RealVector eigenvalues(const HermitianMatrix& h);

double min_eigenvalue(const HermitianMatrix& h);
double spectral_norm(const HermitianMatrix& h);

bool is_psd(const HermitianMatrix& h, const Tolerance& tol = {});

/// Frobenius-nearest PSD matrix: eigenvalues clipped at zero.
HermitianMatrix psd_project(const HermitianMatrix& h);

/// trace(A* B). Throws ShapeMismatch on differing shapes.
Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);
/// Real part of the Frobenius inner product, the inner product on
/// Hermitian matrices viewed as a real vector space.
double real_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix unit E_{i,j} of M_n, zero-indexed.
ComplexMatrix matrix_unit(int n, int i, int j);
/// Block-diagonal a (+) b.
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace opsys
