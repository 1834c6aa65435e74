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

#include "opsys/coproduct.hpp"

#include <cmath>
#include <string>

#include "opsys/errors.hpp"
#include "opsys/random.hpp"

namespace opsys {

namespace {

bool spans_agree(const MatrixOperatorSystem& a, const MatrixOperatorSystem& b,
                 const Tolerance& tol) {
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
  for (const auto& x : a.basis()) {
    if (!b.contains(x.matrix(), tol)) return false;
  }
  for (const auto& x : b.basis()) {
    if (!a.contains(x.matrix(), tol)) return false;
  }
  return true;
}

CosetElement shifted(const CosetElement& x, double s) {
  return CosetElement{x.level, x.left.shifted(s), x.right.shifted(s)};
}

FeasibilityOutcome solve_coset(const CoproductSystem& cp, const CosetElement& x, double eps,
                               const SolveOptions& opts) {
  FeasibilityProblem p{x.level, cp.n(), x.left, x.right, eps};
  return solve(p, opts);
}

}  // namespace

double CosetElement::distance(const CosetElement& o) const {
  return std::sqrt((left.matrix() - o.left.matrix()).squaredNorm() +
                   (right.matrix() - o.right.matrix()).squaredNorm());
}

ComplexMatrix CosetElement::as_direct_sum() const {
  if (level != 1) throw InvalidArgument("as_direct_sum is defined at level 1 only");
  return direct_sum(left.matrix(), right.matrix());
}

CoproductSystem CoproductSystem::build(const MatrixOperatorSystem& left,
                                       const MatrixOperatorSystem& right, const Tolerance& tol,
                                       int bimodule_trials, std::uint64_t seed) {
  const int n = left.ambient_dim();
  if (right.ambient_dim() != n) {
    throw IncompatibleSystems("coproduct needs a common ambient M_n: got M_" + std::to_string(n) +
                              " and M_" + std::to_string(right.ambient_dim()));
  }
  const DiagonalAlgebra dn{n};
  if (!bimodule_check(left, dn, bimodule_trials, seed, tol)) {
    throw IncompatibleSystems(left.label() + " is not a D_" + std::to_string(n) + "-bimodule");
  }
  if (!bimodule_check(right, dn, bimodule_trials, seed + 1, tol)) {
    throw IncompatibleSystems(right.label() + " is not a D_" + std::to_string(n) + "-bimodule");
  }

  const ComplexMatrix zero = ComplexMatrix::Zero(n, n);
  std::vector<HermitianMatrix> kernel;
  for (int i = 0; i < n; ++i) {
    const ComplexMatrix e = matrix_unit(n, i, i);
    kernel.emplace_back(direct_sum(e, -e) / std::sqrt(2.0));
  }

  auto remove_kernel = [&](const ComplexMatrix& x) {
    ComplexMatrix r = x;
    for (const auto& j : kernel) r -= frobenius_inner(j.matrix(), x) * j.matrix();
    return HermitianMatrix(r);
  };
  std::vector<HermitianMatrix> spanning;
  for (const auto& b : left.basis()) spanning.push_back(remove_kernel(direct_sum(b.matrix(), zero)));
  for (const auto& b : right.basis()) spanning.push_back(remove_kernel(direct_sum(zero, b.matrix())));

  MatrixOperatorSystem cosets = MatrixOperatorSystem::from_hermitian_span(
      2 * n, spanning, left.label() + " (+)_D" + std::to_string(n) + " " + right.label(), tol);
  return CoproductSystem(left, right, std::move(kernel), std::move(cosets));
}

ComplexMatrix CoproductSystem::quotient(const ComplexMatrix& x) const {
  if (x.rows() != 2 * n_ || x.cols() != 2 * n_) {
    throw ShapeMismatch("quotient expects a " + std::to_string(2 * n_) + "-dimensional matrix");
  }
  ComplexMatrix r = x;
  for (const auto& j : kernel_) r -= frobenius_inner(j.matrix(), x) * j.matrix();
  return r;
}

CosetElement CoproductSystem::quotient(const LevelElement& s, const LevelElement& t,
                                       const Tolerance& tol) const {
  if (s.level() != t.level()) {
    throw ShapeMismatch("quotient: levels differ (" + std::to_string(s.level()) + " vs " +
                        std::to_string(t.level()) + ")");
  }
  if (!s.belongs_to(left_, tol)) throw NotInSystem("left entry is not in M_k(" + left_.label() + ")");
  if (!t.belongs_to(right_, tol)) {
    throw NotInSystem("right entry is not in M_k(" + right_.label() + ")");
  }
  // The M_k(J) component of (S, T) is (A, -A) with A = Pi_L(S - T) / 2.
  const ComplexMatrix a =
      0.5 * project_block_diagonal(s.block().matrix() - t.block().matrix(), n_);
  return CosetElement{s.level(), HermitianMatrix(s.block().matrix() - a),
                      HermitianMatrix(t.block().matrix() + a)};
}

CosetElement CoproductSystem::unit(int level) const {
  return quotient(LevelElement::unit(level, n_), LevelElement::unit(level, n_));
}

DiagonalAction CoproductSystem::action() const {
  DiagonalAction a;
  a.n = n_;
  const int n = n_;
  a.embed = [n](int i) {
    const ComplexMatrix e = matrix_unit(n, i, i);
    return direct_sum(e, e);
  };
  // Copy the kernel basis so the action stays valid independently of *this.
  a.act = [n, kernel = kernel_](int i, const ComplexMatrix& x, int j) {
    ComplexMatrix moved = ComplexMatrix::Zero(2 * n, 2 * n);
    moved(i, j) = x(i, j);
    moved(n + i, n + j) = x(n + i, n + j);
    ComplexMatrix r = moved;
    for (const auto& k : kernel) r -= frobenius_inner(k.matrix(), moved) * k.matrix();
    return r;
  };
  return a;
}

ComplexMatrix CoproductSystem::to_blocks(const CosetElement& x) const {
  const int k = x.level;
  const int n = n_;
  ComplexMatrix out = ComplexMatrix::Zero(2 * k * n, 2 * k * n);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      out.block(a * 2 * n, b * 2 * n, n, n) = x.left.matrix().block(a * n, b * n, n, n);
      out.block(a * 2 * n + n, b * 2 * n + n, n, n) = x.right.matrix().block(a * n, b * n, n, n);
    }
  }
  return out;
}

CosetElement CoproductSystem::from_blocks(const ComplexMatrix& blocks) const {
  const int n = n_;
  if (blocks.rows() != blocks.cols() || blocks.rows() % (2 * n) != 0) {
    throw ShapeMismatch("from_blocks: dimension is not a multiple of 2n");
  }
  const int k = static_cast<int>(blocks.rows()) / (2 * n);
  ComplexMatrix s(k * n, k * n);
  ComplexMatrix t(k * n, k * n);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      s.block(a * n, b * n, n, n) = blocks.block(a * 2 * n, b * 2 * n, n, n);
      t.block(a * n, b * n, n, n) = blocks.block(a * 2 * n + n, b * 2 * n + n, n, n);
    }
  }
  return quotient(LevelElement(k, n, HermitianMatrix(s)), LevelElement(k, n, HermitianMatrix(t)));
}

FeasibilityOutcome d_cone_member(const CoproductSystem& cp, const LevelElement& s,
                                 const LevelElement& t, const SolveOptions& opts) {
  // Validates membership and shapes; the solve uses the caller's
  // representative so the witness refers to (s, t) directly.
  (void)cp.quotient(s, t, opts.psd);
  FeasibilityProblem p{s.level(), cp.n(), s.block(), t.block(), 0.0};
  return solve(p, opts);
}

FeasibilityOutcome d_cone_member(const CoproductSystem& cp, const CosetElement& x,
                                 const SolveOptions& opts) {
  return solve_coset(cp, x, 0.0, opts);
}

std::string to_string(ConeVerdict v) {
  switch (v) {
    case ConeVerdict::Member:
      return "member";
    case ConeVerdict::NonMember:
      return "non-member";
    case ConeVerdict::Boundary:
      return "boundary";
    case ConeVerdict::Undecided:
      return "undecided";
  }
  return "undecided";
}

std::vector<double> default_eps_ladder() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

CConeResult c_cone_member(const CoproductSystem& cp, const CosetElement& x,
                          const std::vector<double>& ladder, const SolveOptions& opts) {
  if (ladder.empty()) throw InvalidArgument("eps ladder is empty");
  for (size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 0.0) || (i > 0 && !(ladder[i] < ladder[i - 1]))) {
      throw InvalidArgument("eps ladder must be strictly descending and positive");
    }
  }
  CConeResult result;
  bool undecided = false;
  for (double eps : ladder) {
    FeasibilityOutcome o = solve_coset(cp, x, eps, opts);
    const Verdict v = o.verdict;
    result.trace.push_back(LadderStep{eps, std::move(o)});
    if (v == Verdict::Infeasible) {
      result.verdict = ConeVerdict::NonMember;
      return result;
    }
    if (v == Verdict::Undecided) undecided = true;
  }
  result.verdict = undecided ? ConeVerdict::Undecided : ConeVerdict::Member;
  return result;
}

CConeResult c_cone_member(const CoproductSystem& cp, const LevelElement& s, const LevelElement& t,
                          const std::vector<double>& ladder, const SolveOptions& opts) {
  (void)cp.quotient(s, t, opts.psd);
  return c_cone_member(cp, CosetElement{s.level(), s.block(), t.block()}, ladder, opts);
}

ConeVerdict classify_d_cone(const CoproductSystem& cp, const CosetElement& x, double slack,
                            const SolveOptions& opts) {
  const Verdict inner = solve_coset(cp, shifted(x, -slack), 0.0, opts).verdict;
  if (inner == Verdict::Feasible) return ConeVerdict::Member;
  const Verdict outer = solve_coset(cp, x, slack, opts).verdict;
  if (outer == Verdict::Infeasible) return ConeVerdict::NonMember;
  if (inner == Verdict::Infeasible || outer == Verdict::Feasible) return ConeVerdict::Boundary;
  return ConeVerdict::Undecided;
}

CosetElement embed_left(const CoproductSystem& cp, const LevelElement& u, const Tolerance& tol) {
  if (!u.belongs_to(cp.left(), tol)) {
    throw NotInSystem("embed_left: element is not in M_k(" + cp.left().label() + ")");
  }
  const int kn = u.block().dim();
  return cp.quotient(LevelElement(u.level(), cp.n(), u.block() * 2.0),
                     LevelElement(u.level(), cp.n(), HermitianMatrix::zero(kn)), tol);
}

CosetElement embed_right(const CoproductSystem& cp, const LevelElement& u, const Tolerance& tol) {
  if (!u.belongs_to(cp.right(), tol)) {
    throw NotInSystem("embed_right: element is not in M_k(" + cp.right().label() + ")");
  }
  const int kn = u.block().dim();
  return cp.quotient(LevelElement(u.level(), cp.n(), HermitianMatrix::zero(kn)),
                     LevelElement(u.level(), cp.n(), u.block() * 2.0), tol);
}

LinearMatrixMap universal_map(const CoproductSystem& cp, const LinearMatrixMap& phi1,
                              const LinearMatrixMap& phi2, int trials, std::uint64_t seed) {
  const Tolerance tol;
  if (!spans_agree(phi1.domain(), cp.left(), tol)) {
    throw InvalidArgument("phi1 must be defined on " + cp.left().label());
  }
  if (!spans_agree(phi2.domain(), cp.right(), tol)) {
    throw InvalidArgument("phi2 must be defined on " + cp.right().label());
  }
  if (phi1.target_dim() != phi2.target_dim()) {
    throw ShapeMismatch("phi1 and phi2 must share a target M_m");
  }
  if (!is_unital(phi1, 1e-8) || !is_unital(phi2, 1e-8)) {
    throw InvalidArgument("universal_map needs unital phi1 and phi2");
  }
  const int n = cp.n();
  for (int i = 0; i < n; ++i) {
    const ComplexMatrix e = matrix_unit(n, i, i);
    const double diff = (phi1(e) - phi2(e)).norm();
    if (diff > 1e-8) {
      throw IllConditioned("phi1 and phi2 disagree on E_" + std::to_string(i + 1) +
                           std::to_string(i + 1) + " by " + std::to_string(diff));
    }
  }
  for (int level = 1; level <= 2; ++level) {
    if (!sampled_kpositive(phi1, level, trials, seed).passed ||
        !sampled_kpositive(phi2, level, trials, seed + 1).passed) {
      throw InvalidArgument("universal_map inputs failed sampled " + std::to_string(level) +
                            "-positivity");
    }
  }

  std::vector<ComplexMatrix> images;
  images.reserve(cp.coset_basis().size());
  for (const auto& b : cp.coset_basis()) {
    const ComplexMatrix s = b.matrix().topLeftCorner(n, n);
    const ComplexMatrix t = b.matrix().bottomRightCorner(n, n);
    images.push_back(0.5 * (phi1(s) + phi2(t)));
  }
  return LinearMatrixMap(cp.coset_space(), phi1.target_dim(), std::move(images), cp.action());
}

PositiveSampler coset_positive_sampler(const CoproductSystem& cp, const Tolerance& tol) {
  return [&cp, tol](int level, Rng& rng) {
    const HermitianMatrix ps = random_psd_level(cp.left(), level, rng, tol);
    const HermitianMatrix pt = random_psd_level(cp.right(), level, rng, tol);
    return cp.to_blocks(
        cp.quotient(LevelElement(level, cp.n(), ps), LevelElement(level, cp.n(), pt), tol));
  };
}

IntersectionReport intersection_check(const CoproductSystem& cp, const Tolerance& tol) {
  const int n = cp.n();
  const ComplexMatrix zero = ComplexMatrix::Zero(n, n);
  std::vector<HermitianMatrix> left_img;
  std::vector<HermitianMatrix> right_img;
  for (const auto& b : cp.left().basis()) {
    left_img.emplace_back(2.0 * cp.quotient(direct_sum(b.matrix(), zero)));
  }
  for (const auto& b : cp.right().basis()) {
    right_img.emplace_back(2.0 * cp.quotient(direct_sum(zero, b.matrix())));
  }
  const auto left_onb = real_orthonormal_basis(left_img, tol);
  const auto right_onb = real_orthonormal_basis(right_img, tol);
  std::vector<HermitianMatrix> both = left_onb;
  both.insert(both.end(), right_onb.begin(), right_onb.end());
  const auto sum_onb = real_orthonormal_basis(both, tol);

  IntersectionReport r;
  r.left_dim = static_cast<int>(left_onb.size());
  r.right_dim = static_cast<int>(right_onb.size());
  r.intersection_dim = r.left_dim + r.right_dim - static_cast<int>(sum_onb.size());

  bool diag_inside = true;
  for (int i = 0; i < n; ++i) {
    const ComplexMatrix e = matrix_unit(n, i, i);
    const ComplexMatrix d = cp.quotient(direct_sum(e, e));
    const double bound = tol.subspace_eps * (1.0 + d.norm());
    diag_inside = diag_inside && span_residual(left_onb, d) <= bound &&
                  span_residual(right_onb, d) <= bound;
  }
  r.holds = diag_inside && r.intersection_dim == n;
  return r;
}

RSubsystemReport r_subsystem_report(const CoproductSystem& cp, const Tolerance& tol) {
  const int n = cp.n();
  const ComplexMatrix zero = ComplexMatrix::Zero(n, n);
  std::vector<ComplexMatrix> sum_basis;
  for (const auto& b : cp.left().basis()) sum_basis.push_back(direct_sum(b.matrix(), zero));
  for (const auto& b : cp.right().basis()) sum_basis.push_back(direct_sum(zero, b.matrix()));
  const int total = static_cast<int>(sum_basis.size());

  // Real coefficients c with E(s) - E(t) = 0 for sum_k c_k v_k.
  Eigen::MatrixXd constraint(n, total);
  for (int k = 0; k < total; ++k) {
    for (int i = 0; i < n; ++i) {
      const auto& v = sum_basis[static_cast<size_t>(k)];
      constraint(i, k) = v(i, i).real() - v(n + i, n + i).real();
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraint, Eigen::ComputeFullV);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > 1e-10) ++rank;
  }

  RSubsystemReport r;
  r.r_dim = total - rank;
  r.coproduct_dim = cp.dim();
  std::vector<HermitianMatrix> images;
  for (int c = rank; c < total; ++c) {
    ComplexMatrix elem = ComplexMatrix::Zero(2 * n, 2 * n);
    for (int k = 0; k < total; ++k) elem += svd.matrixV()(k, c) * sum_basis[static_cast<size_t>(k)];
    images.emplace_back(cp.quotient(elem));
  }
  r.q_rank = static_cast<int>(real_orthonormal_basis(images, tol).size());
  r.bijection = r.r_dim == r.q_rank && r.q_rank == r.coproduct_dim;
  return r;
}

RSubsystemReport r_subsystem_demo() {
  const auto m2 = MatrixOperatorSystem::full(2);
  const CoproductSystem cp = CoproductSystem::build(m2, m2);
  RSubsystemReport r = r_subsystem_report(cp);

  const HermitianMatrix s = HermitianMatrix::from_real(2, {2.0, 2.5, 2.5, 2.0});
  const HermitianMatrix t = HermitianMatrix::diagonal({2.0, 2.0});
  r.membership = d_cone_member(cp, LevelElement(1, 2, s), LevelElement(1, 2, t));

  const HermitianMatrix a = HermitianMatrix::identity(2);
  r.given_witness_valid = is_psd(s + a) && is_psd(t - a);

  const HermitianMatrix sum(direct_sum(s.matrix(), t.matrix()));
  r.direct_sum_min_eigenvalue = min_eigenvalue(sum);
  r.direct_sum_psd = is_psd(sum);
  r.certified = r.bijection && r.membership.verdict == Verdict::Feasible && r.given_witness_valid &&
                !r.direct_sum_psd;
  return r;
}

}  // namespace opsys
