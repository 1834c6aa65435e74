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

#include "opsys/cp_maps.hpp"

#include <cmath>
#include <string>

#include "opsys/errors.hpp"

namespace opsys {

DiagonalAction DiagonalAction::standard(int n) {
  DiagonalAction a;
  a.n = n;
  a.embed = [n](int i) { return matrix_unit(n, i, i); };
  a.act = [n](int i, const ComplexMatrix& x, int j) {
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    out(i, j) = x(i, j);
    return out;
  };
  return a;
}

LinearMatrixMap::LinearMatrixMap(MatrixOperatorSystem domain, int target_dim,
                                 std::vector<ComplexMatrix> images,
                                 std::optional<DiagonalAction> action)
    : domain_(std::move(domain)),
      m_(target_dim),
      images_(std::move(images)),
      action_(action ? std::move(*action) : DiagonalAction::standard(domain_.ambient_dim())) {
  if (target_dim < 1) throw InvalidArgument("target dimension must be positive");
  if (static_cast<int>(images_.size()) != domain_.dim()) {
    throw ShapeMismatch("map needs one image per domain basis element: got " +
                        std::to_string(images_.size()) + ", expected " +
                        std::to_string(domain_.dim()));
  }
  for (const auto& img : images_) {
    if (img.rows() != m_ || img.cols() != m_) {
      throw ShapeMismatch("map image is not " + std::to_string(m_) + "x" + std::to_string(m_));
    }
    if ((img - img.adjoint()).norm() > 1e-10 * (1.0 + img.norm())) {
      throw InvalidArgument("map does not preserve Hermitian elements");
    }
  }
}

LinearMatrixMap LinearMatrixMap::from_function(
    MatrixOperatorSystem domain, int target_dim,
    const std::function<ComplexMatrix(const ComplexMatrix&)>& f,
    std::optional<DiagonalAction> action) {
  std::vector<ComplexMatrix> images;
  images.reserve(domain.basis().size());
  for (const auto& b : domain.basis()) images.push_back(f(b.matrix()));
  return LinearMatrixMap(std::move(domain), target_dim, std::move(images), std::move(action));
}

ComplexMatrix LinearMatrixMap::apply_projected(const ComplexMatrix& x) const {
  const std::vector<Complex> c = domain_.coordinates(x);
  ComplexMatrix out = ComplexMatrix::Zero(m_, m_);
  for (size_t k = 0; k < c.size(); ++k) out += c[k] * images_[k];
  return out;
}

ComplexMatrix LinearMatrixMap::operator()(const ComplexMatrix& x, const Tolerance& tol) const {
  if (!domain_.contains(x, tol)) {
    throw NotInSystem("map argument is not in the domain " + domain_.label());
  }
  return apply_projected(x);
}

ComplexMatrix LinearMatrixMap::amplify(const ComplexMatrix& block, const Tolerance& tol) const {
  const int n = source_dim();
  if (block.rows() != block.cols() || block.rows() % n != 0) {
    throw ShapeMismatch("amplify: block is not a multiple of the source dimension");
  }
  const int k = static_cast<int>(block.rows()) / n;
  ComplexMatrix out(k * m_, k * m_);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      out.block(i * m_, j * m_, m_, m_) = (*this)(block.block(i * n, j * n, n, n), tol);
    }
  }
  return out;
}

ComplexMatrix LinearMatrixMap::action_matrix() const {
  ComplexMatrix a(m_ * m_, static_cast<Eigen::Index>(images_.size()));
  for (size_t k = 0; k < images_.size(); ++k) {
    for (int r = 0; r < m_; ++r) {
      for (int c = 0; c < m_; ++c) a(r * m_ + c, static_cast<Eigen::Index>(k)) = images_[k](r, c);
    }
  }
  return a;
}

LinearMatrixMap identity_map(const MatrixOperatorSystem& sys) {
  return LinearMatrixMap::from_function(sys, sys.ambient_dim(),
                                        [](const ComplexMatrix& x) { return x; });
}

LinearMatrixMap transpose_map(int n) {
  return LinearMatrixMap::from_function(MatrixOperatorSystem::full(n), n,
                                        [](const ComplexMatrix& x) -> ComplexMatrix {
                                          return x.transpose();
                                        });
}

LinearMatrixMap compose(const LinearMatrixMap& outer, const LinearMatrixMap& inner) {
  if (inner.target_dim() != outer.source_dim()) {
    throw ShapeMismatch("compose: inner target M_" + std::to_string(inner.target_dim()) +
                        " differs from outer source M_" + std::to_string(outer.source_dim()));
  }
  std::vector<ComplexMatrix> images;
  images.reserve(inner.images().size());
  for (const auto& img : inner.images()) images.push_back(outer(img));
  return LinearMatrixMap(inner.domain(), outer.target_dim(), std::move(images), inner.action());
}

bool is_unital(const LinearMatrixMap& phi, double tol) {
  const int n = phi.source_dim();
  const ComplexMatrix img = phi(ComplexMatrix::Identity(n, n));
  return (img - ComplexMatrix::Identity(phi.target_dim(), phi.target_dim())).norm() < tol;
}

ComplexMatrix choi_matrix(const LinearMatrixMap& phi) {
  const int n = phi.source_dim();
  if (phi.domain().dim() != n * n) {
    throw DomainNotFull("Choi criterion needs a map on all of M_" + std::to_string(n) +
                        "; domain " + phi.domain().label() + " has dimension " +
                        std::to_string(phi.domain().dim()));
  }
  const int m = phi.target_dim();
  ComplexMatrix choi(n * m, n * m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      choi.block(i * m, j * m, m, m) = phi.apply_projected(matrix_unit(n, i, j));
    }
  }
  return choi;
}

bool choi_psd(const LinearMatrixMap& phi, const Tolerance& tol) {
  return is_psd(HermitianMatrix(choi_matrix(phi)), tol);
}

KPositivityResult sampled_kpositive(const LinearMatrixMap& phi, int level, int trials,
                                    std::uint64_t seed, const Tolerance& tol,
                                    const PositiveSampler& sampler) {
  if (level < 1 || level > kMaxLevel) {
    throw InvalidArgument("sampled_kpositive: level must lie in 1.." + std::to_string(kMaxLevel));
  }
  Rng rng(seed);
  KPositivityResult result;
  for (int t = 0; t < trials; ++t) {
    const ComplexMatrix p = sampler ? sampler(level, rng)
                                    : random_psd_level(phi.domain(), level, rng, tol).matrix();
    const HermitianMatrix image(phi.amplify(p, tol));
    const RealVector ev = eigenvalues(image);
    const double lo = ev(0);
    const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    result.trials_run = t + 1;
    if (t == 0 || lo < result.worst_min_eigenvalue) result.worst_min_eigenvalue = lo;
    if (lo < -tol.psd_slack(norm)) {
      result.passed = false;
      result.counterexample = p;
      return result;
    }
  }
  return result;
}

bool bimodule_map_check(const LinearMatrixMap& phi, int trials,
                        const std::optional<std::vector<ComplexMatrix>>& representation,
                        std::uint64_t seed, double tol) {
  const DiagonalAction& act = phi.action();
  const int n = act.n;
  const int m = phi.target_dim();
  std::vector<ComplexMatrix> pi;
  if (representation) {
    pi = *representation;
    if (static_cast<int>(pi.size()) != n) {
      throw ShapeMismatch("representation must give one image per diagonal unit");
    }
  } else {
    if (m != n) {
      throw MissingRepresentation("target M_" + std::to_string(m) +
                                  " needs an explicit representation of D_" + std::to_string(n));
    }
    for (int i = 0; i < n; ++i) pi.push_back(matrix_unit(n, i, i));
  }

  auto close = [tol](const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).norm() <= tol * (1.0 + std::max(a.norm(), b.norm()));
  };
  auto in_domain = [&](const ComplexMatrix& x) { return phi.domain().contains(x); };

  for (const auto& b : phi.domain().basis()) {
    const ComplexMatrix fb = phi.apply_projected(b.matrix());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const ComplexMatrix moved = act.act(i, b.matrix(), j);
        if (!in_domain(moved)) return false;
        if (!close(phi.apply_projected(moved), pi[static_cast<size_t>(i)] * fb *
                                                   pi[static_cast<size_t>(j)])) {
          return false;
        }
      }
    }
  }

  const int src = phi.source_dim();
  const ComplexMatrix f_one = phi.apply_projected(ComplexMatrix::Identity(src, src));
  for (int i = 0; i < n; ++i) {
    if (!close(phi.apply_projected(act.embed(i)), pi[static_cast<size_t>(i)] * f_one)) {
      return false;
    }
  }

  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    ComplexMatrix x = ComplexMatrix::Zero(src, src);
    for (const auto& b : phi.domain().basis()) x += Complex(normal(rng), normal(rng)) * b.matrix();
    const ComplexMatrix a = random_gaussian(n, 1, rng);
    const ComplexMatrix a2 = random_gaussian(n, 1, rng);
    ComplexMatrix moved = ComplexMatrix::Zero(src, src);
    ComplexMatrix pa = ComplexMatrix::Zero(m, m);
    ComplexMatrix pa2 = ComplexMatrix::Zero(m, m);
    for (int i = 0; i < n; ++i) {
      pa += a(i, 0) * pi[static_cast<size_t>(i)];
      pa2 += a2(i, 0) * pi[static_cast<size_t>(i)];
      for (int j = 0; j < n; ++j) moved += a(i, 0) * a2(j, 0) * act.act(i, x, j);
    }
    if (!close(phi.apply_projected(moved), pa * phi.apply_projected(x) * pa2)) return false;
  }
  return true;
}

}  // namespace opsys
