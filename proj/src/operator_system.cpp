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

#include "opsys/operator_system.hpp"

#include <cmath>
#include <string>

#include "opsys/errors.hpp"
#include "opsys/random.hpp"

namespace opsys {

namespace {

void require_square(const ComplexMatrix& m, int n, const char* what) {
  if (m.rows() != n || m.cols() != n) {
    throw ShapeMismatch(std::string(what) + ": expected " + std::to_string(n) + "x" +
                        std::to_string(n) + ", got " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()));
  }
}

}  // namespace

MatrixOperatorSystem MatrixOperatorSystem::from_hermitian_span(
    int n, const std::vector<HermitianMatrix>& spanning, std::string label, const Tolerance& tol) {
  if (n < 1) throw InvalidArgument("ambient dimension must be positive");
  for (const auto& h : spanning) require_square(h.matrix(), n, "operator system generator");
  MatrixOperatorSystem sys;
  sys.n_ = n;
  sys.label_ = std::move(label);
  sys.basis_ = real_orthonormal_basis(spanning, tol);
  if (!sys.contains(ComplexMatrix::Identity(n, n), tol)) {
    throw InvalidArgument("span does not contain the unit I_" + std::to_string(n));
  }
  return sys;
}

MatrixOperatorSystem MatrixOperatorSystem::full(int n) {
  std::vector<ComplexMatrix> units;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      units.push_back(matrix_unit(n, i, j));
    }
  }
  return make_system(n, units, "M_" + std::to_string(n)).as_algebra();
}

MatrixOperatorSystem MatrixOperatorSystem::diagonal(int n) {
  std::vector<ComplexMatrix> units;
  for (int i = 0; i < n; ++i) units.push_back(matrix_unit(n, i, i));
  return make_system(n, units, "D_" + std::to_string(n)).as_algebra();
}

MatrixOperatorSystem MatrixOperatorSystem::with_label(std::string label) const {
  MatrixOperatorSystem out = *this;
  out.label_ = std::move(label);
  return out;
}

MatrixOperatorSystem MatrixOperatorSystem::as_algebra() const {
  MatrixOperatorSystem out = *this;
  out.algebra_ = true;
  return out;
}

std::vector<Complex> MatrixOperatorSystem::coordinates(const ComplexMatrix& m) const {
  require_square(m, n_, "coordinates");
  std::vector<Complex> c;
  c.reserve(basis_.size());
  for (const auto& b : basis_) c.push_back(frobenius_inner(b.matrix(), m));
  return c;
}

ComplexMatrix MatrixOperatorSystem::project(const ComplexMatrix& m) const {
  const std::vector<Complex> c = coordinates(m);
  ComplexMatrix out = ComplexMatrix::Zero(n_, n_);
  for (size_t k = 0; k < basis_.size(); ++k) out += c[k] * basis_[k].matrix();
  return out;
}

double MatrixOperatorSystem::residual(const ComplexMatrix& m) const {
  return (m - project(m)).norm();
}

bool MatrixOperatorSystem::contains(const ComplexMatrix& m, const Tolerance& tol) const {
  return residual(m) <= tol.subspace_eps * (1.0 + m.norm());
}

ComplexMatrix DiagonalAlgebra::element(const std::vector<Complex>& d) const {
  if (static_cast<int>(d.size()) != dim) throw ShapeMismatch("diagonal element size mismatch");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) m(i, i) = d[static_cast<size_t>(i)];
  return m;
}

LevelElement::LevelElement(int level, int ambient_dim, HermitianMatrix block)
    : level_(level), n_(ambient_dim), block_(std::move(block)) {
  if (level < 1 || level > kMaxLevel) {
    throw InvalidArgument("level must lie in 1.." + std::to_string(kMaxLevel) + ", got " +
                          std::to_string(level));
  }
  if (ambient_dim < 1 || block_.dim() != level * ambient_dim) {
    throw ShapeMismatch("level element block has dimension " + std::to_string(block_.dim()) +
                        ", expected " + std::to_string(level * ambient_dim));
  }
}

LevelElement LevelElement::unit(int level, int ambient_dim) {
  return LevelElement(level, ambient_dim, HermitianMatrix::identity(level * ambient_dim));
}

ComplexMatrix LevelElement::entry(int i, int j) const {
  return block_.matrix().block(i * n_, j * n_, n_, n_);
}

bool LevelElement::belongs_to(const MatrixOperatorSystem& sys, const Tolerance& tol) const {
  if (sys.ambient_dim() != n_) return false;
  for (int i = 0; i < level_; ++i) {
    for (int j = i; j < level_; ++j) {
      if (!sys.contains(entry(i, j), tol)) return false;
    }
  }
  return true;
}

MatrixOperatorSystem make_system(int n, const std::vector<ComplexMatrix>& generators,
                                 std::string label, const Tolerance& tol) {
  std::vector<HermitianMatrix> spanning;
  spanning.reserve(1 + 2 * generators.size());
  spanning.push_back(HermitianMatrix::identity(n));
  const Complex i_unit(0.0, 1.0);
  for (const auto& g : generators) {
    require_square(g, n, "make_system generator");
    spanning.emplace_back((g + g.adjoint()) * 0.5);
    spanning.emplace_back((g - g.adjoint()) / (2.0 * i_unit));
  }
  return MatrixOperatorSystem::from_hermitian_span(n, spanning, std::move(label), tol);
}

std::vector<HermitianMatrix> real_orthonormal_basis(const std::vector<HermitianMatrix>& spanning,
                                                    const Tolerance& tol) {
  std::vector<HermitianMatrix> basis;
  for (const auto& h : spanning) {
    ComplexMatrix v = h.matrix();
    const double scale = v.norm();
    // Two passes of modified Gram-Schmidt keep the basis orthonormal to
    // round-off even for nearly dependent candidates.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        v -= real_inner(b.matrix(), v) * b.matrix();
      }
    }
    const double rest = v.norm();
    if (rest > tol.subspace_eps * (1.0 + scale)) {
      basis.emplace_back(v / rest);
    }
  }
  return basis;
}

double span_residual(const std::vector<HermitianMatrix>& onb, const ComplexMatrix& m) {
  ComplexMatrix r = m;
  for (const auto& b : onb) r -= frobenius_inner(b.matrix(), m) * b.matrix();
  return r.norm();
}

bool contains(const MatrixOperatorSystem& sys, const ComplexMatrix& m, const Tolerance& tol) {
  return sys.contains(m, tol);
}

double order_norm(const MatrixOperatorSystem& sys, const HermitianMatrix& v, const Tolerance& tol) {
  if (!sys.contains(v.matrix(), tol)) {
    throw NotInSystem("order_norm: element is not in " + sys.label());
  }
  return spectral_norm(v);
}

ComplexMatrix project_level(const MatrixOperatorSystem& sys, const ComplexMatrix& block) {
  const int n = sys.ambient_dim();
  if (block.rows() != block.cols() || block.rows() % n != 0) {
    throw ShapeMismatch("project_level: block is not a multiple of the ambient dimension");
  }
  const int k = static_cast<int>(block.rows()) / n;
  ComplexMatrix out(block.rows(), block.cols());
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      out.block(i * n, j * n, n, n) = sys.project(block.block(i * n, j * n, n, n));
    }
  }
  return out;
}

bool bimodule_check(const MatrixOperatorSystem& sys, const DiagonalAlgebra& alg, int trials,
                    std::uint64_t seed, const Tolerance& tol) {
  const int n = sys.ambient_dim();
  if (alg.dim != n) {
    throw ShapeMismatch("bimodule_check: algebra D_" + std::to_string(alg.dim) +
                        " does not act on M_" + std::to_string(n));
  }
  // Span condition. By bilinearity the basis/unit pairs are a complete
  // certificate.
  for (const auto& b : sys.basis()) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        // E_ii b E_jj keeps only the (i, j) entry of b.
        ComplexMatrix m = ComplexMatrix::Zero(n, n);
        m(i, j) = b(i, j);
        if (!sys.contains(m, tol)) return false;
      }
    }
  }

  Rng rng(seed);
  std::uniform_int_distribution<int> level_dist(1, 2);
  for (int t = 0; t < trials; ++t) {
    const int k = level_dist(rng);
    const int m = level_dist(rng);
    const HermitianMatrix p = random_psd_level(sys, k, rng, tol);
    ComplexMatrix x = ComplexMatrix::Zero(m * n, k * n);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < k; ++c) {
        const ComplexMatrix d = random_gaussian(n, 1, rng);
        for (int i = 0; i < n; ++i) x(r * n + i, c * n + i) = d(i, 0);
      }
    }
    const HermitianMatrix y(x * p.matrix() * x.adjoint());
    if (!is_psd(y, tol)) return false;
    if (!LevelElement(m, n, y).belongs_to(sys, tol)) return false;
  }
  return true;
}

bool level_positive(const MatrixOperatorSystem& sys, const LevelElement& x, const Tolerance& tol) {
  if (!x.belongs_to(sys, tol)) {
    throw NotInSystem("level element does not belong to M_" + std::to_string(x.level()) + "(" +
                      sys.label() + ")");
  }
  return is_psd(x.block(), tol);
}

}  // namespace opsys
