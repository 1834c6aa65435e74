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

#include "gtest/gtest.h"

#include "opsys/errors.hpp"
#include "opsys/graph_systems.hpp"
#include "opsys/paper_suite.hpp"
#include "opsys/random.hpp"

using namespace opsys;

namespace {

const HermitianMatrix kPaperS = HermitianMatrix::from_real(2, {2.0, 2.5, 2.5, 2.0});

CoproductSystem m2_m2() {
  return build_coproduct(MatrixOperatorSystem::full(2), MatrixOperatorSystem::full(2));
}

LevelElement lvl(const HermitianMatrix& h, int n = 2) { return LevelElement(h.dim() / n, n, h); }

Graph random_graph(int n, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (coin(rng)) edges.emplace_back(i, j);
  return Graph(n, edges);
}

bool witness_valid(const CosetElement& x, int n, const HermitianMatrix& a) {
  if ((project_block_diagonal(a.matrix(), n) - a.matrix()).norm() > 1e-10) return false;
  return is_psd(x.left + a) && is_psd(x.right - a);
}

}  // namespace

TEST(build_coproduct, dimensions) {
  EXPECT_EQ(m2_m2().dim(), 6);
  for (int n = 1; n <= 4; ++n) {
    const auto d = MatrixOperatorSystem::diagonal(n);
    EXPECT_EQ(build_coproduct(d, d).dim(), n);
  }
  EXPECT_EQ(build_coproduct(graph_system(Graph(2, {{1, 2}})), MatrixOperatorSystem::diagonal(2)).dim(), 4);
}

TEST(build_coproduct, dimension_formula_on_random_graph_pairs) {
  Rng rng(83);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 4;
    const auto s = graph_system(random_graph(n, rng));
    const auto t = graph_system(random_graph(n, rng));
    EXPECT_EQ(build_coproduct(s, t).dim(), s.dim() + t.dim() - n);
  }
}

TEST(build_coproduct, incompatible_inputs) {
  EXPECT_THROW(build_coproduct(MatrixOperatorSystem::full(2), MatrixOperatorSystem::full(3)),
               IncompatibleSystems);
  const auto bad = make_system(2, {matrix_unit(2, 0, 1) + matrix_unit(2, 1, 0)});
  EXPECT_THROW(build_coproduct(bad, MatrixOperatorSystem::full(2)), IncompatibleSystems);
  EXPECT_THROW(build_coproduct(MatrixOperatorSystem::full(2), bad), IncompatibleSystems);
}

TEST(coproduct, kernel_is_pure_and_orthonormal) {
  const auto cp = m2_m2();
  ASSERT_EQ(cp.kernel_basis().size(), 2u);
  for (const auto& j : cp.kernel_basis()) {
    const ComplexMatrix top = j.matrix().topLeftCorner(2, 2);
    const ComplexMatrix bottom = j.matrix().bottomRightCorner(2, 2);
    EXPECT_EQ((top + bottom).norm(), 0.0);
    EXPECT_EQ((top - project_block_diagonal(top, 2)).norm(), 0.0);
    EXPECT_EQ(j.matrix().topRightCorner(2, 2).norm(), 0.0);
    EXPECT_LE(cp.quotient(j.matrix()).norm(), 1e-15);
    for (const auto& b : cp.coset_basis()) EXPECT_LE(std::abs(real_inner(b.matrix(), j.matrix())), 1e-12);
  }
}

TEST(coproduct, quotient_identifies_diagonals) {
  const auto cp = m2_m2();
  Rng rng(89);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 1 + trial % 2;
    const ComplexMatrix a = project_block_diagonal(random_hermitian(2 * k, rng).matrix(), 2);
    const HermitianMatrix s = random_hermitian(2 * k, rng);
    const HermitianMatrix t = random_hermitian(2 * k, rng);
    const CosetElement x = cp.quotient(lvl(s), lvl(t));
    const CosetElement y = cp.quotient(lvl(HermitianMatrix(s.matrix() + a)), lvl(HermitianMatrix(t.matrix() - a)));
    EXPECT_LE(x.distance(y), 1e-12);
    EXPECT_LE(cp.from_blocks(cp.to_blocks(x)).distance(x), 1e-12);
  }
  const auto left_d = embed_left(cp, lvl(HermitianMatrix::diagonal({1.0, -2.0})));
  const auto right_d = embed_right(cp, lvl(HermitianMatrix::diagonal({1.0, -2.0})));
  EXPECT_LE(left_d.distance(right_d), 1e-12);
}

TEST(coproduct, quotient_rejects_foreign_entries) {
  const auto cp = build_coproduct(graph_system(Graph::path(3)), MatrixOperatorSystem::diagonal(3));
  const HermitianMatrix outside = HermitianMatrix(matrix_unit(3, 0, 2) + matrix_unit(3, 2, 0));
  EXPECT_THROW(cp.quotient(lvl(outside, 3), lvl(HermitianMatrix::identity(3), 3)), NotInSystem);
  EXPECT_THROW(cp.quotient(lvl(HermitianMatrix::identity(3), 3), lvl(outside, 3)), NotInSystem);
  EXPECT_THROW(cp.quotient(LevelElement::unit(1, 3), LevelElement::unit(2, 3)), ShapeMismatch);
  EXPECT_THROW(embed_left(cp, lvl(outside, 3)), NotInSystem);
}

TEST(d_cone_member, paper_pair_is_in_cone_though_direct_sum_is_not) {
  const auto cp = m2_m2();
  const HermitianMatrix t = HermitianMatrix::identity(2) * 2.0;
  const FeasibilityOutcome out = d_cone_member(cp, lvl(kPaperS), lvl(t));
  ASSERT_EQ(out.verdict, Verdict::Feasible);
  EXPECT_TRUE(witness_valid(CosetElement{1, kPaperS, t}, 2, *out.witness));
  EXPECT_FALSE(is_psd(HermitianMatrix(direct_sum(kPaperS.matrix(), t.matrix()))));
  EXPECT_NEAR(min_eigenvalue(HermitianMatrix(direct_sum(kPaperS.matrix(), t.matrix()))), -0.5, 1e-12);
}

TEST(d_cone_member, unit_and_negative_unit) {
  const auto cp = m2_m2();
  EXPECT_EQ(d_cone_member(cp, cp.unit(1)).verdict, Verdict::Feasible);
  const auto neg = cp.quotient(lvl(-HermitianMatrix::identity(2)), lvl(-HermitianMatrix::identity(2)));
  EXPECT_EQ(d_cone_member(cp, neg).verdict, Verdict::Infeasible);
}

TEST(c_cone_member, examples) {
  const auto cp = m2_m2();
  const CConeResult paper = c_cone_member(cp, lvl(kPaperS), lvl(HermitianMatrix::identity(2) * 2.0));
  EXPECT_EQ(paper.verdict, ConeVerdict::Member);
  EXPECT_EQ(paper.trace.size(), default_eps_ladder().size());

  const CConeResult neg = c_cone_member(cp, lvl(-HermitianMatrix::identity(2)), lvl(-HermitianMatrix::identity(2)));
  EXPECT_EQ(neg.verdict, ConeVerdict::NonMember);
  ASSERT_EQ(neg.trace.size(), 1u);
  EXPECT_DOUBLE_EQ(neg.trace[0].eps, 1e-1);

  const CConeResult zero = c_cone_member(cp, lvl(HermitianMatrix::zero(2)), lvl(HermitianMatrix::zero(2)));
  EXPECT_EQ(zero.verdict, ConeVerdict::Member);

  EXPECT_THROW(c_cone_member(cp, cp.unit(1), {}), InvalidArgument);
  EXPECT_THROW(c_cone_member(cp, cp.unit(1), {1e-3, 1e-2}), InvalidArgument);
  EXPECT_THROW(c_cone_member(cp, cp.unit(1), {1e-2, 0.0}), InvalidArgument);
}

TEST(classify_d_cone, boundary_points) {
  const auto cp = m2_m2();
  const auto zero = cp.quotient(lvl(HermitianMatrix::zero(2)), lvl(HermitianMatrix::zero(2)));
  EXPECT_EQ(classify_d_cone(cp, zero, 1e-6), ConeVerdict::Boundary);
  EXPECT_EQ(classify_d_cone(cp, cp.unit(1), 1e-6), ConeVerdict::Member);
  const auto neg = cp.quotient(lvl(-HermitianMatrix::identity(2)), lvl(-HermitianMatrix::identity(2)));
  EXPECT_EQ(classify_d_cone(cp, neg, 1e-6), ConeVerdict::NonMember);
}

TEST(coproduct, proximinality_on_random_queries) {
  Rng rng(97);
  const std::vector<CoproductSystem> cps = {
      m2_m2(), build_coproduct(graph_system(Graph::path(3)), graph_system(Graph::complete(3)))};
  int strict = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto& cp = cps[static_cast<size_t>(trial % 2)];
    const int level = 1 + (trial / 2) % 2;
    const CosetElement x = random_cone_query(cp, level, rng);
    const ConeVerdict d = classify_d_cone(cp, x, 10.0 * Tolerance{}.psd_slack(0.0));
    if (d == ConeVerdict::Boundary || d == ConeVerdict::Undecided) continue;
    ++strict;
    const ConeVerdict c = c_cone_member(cp, x).verdict;
    EXPECT_EQ(c, d) << "trial " << trial;
  }
  EXPECT_GT(strict, 20);
}

TEST(coproduct, quotient_of_positive_pairs_is_positive) {
  Rng rng(101);
  const auto cp = build_coproduct(graph_system(Graph::path(3)), MatrixOperatorSystem::full(3));
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 1 + trial % 2;
    const HermitianMatrix ps = random_psd_level(cp.left(), k, rng);
    const HermitianMatrix pt = random_psd_level(cp.right(), k, rng);
    const FeasibilityOutcome out = d_cone_member(cp, LevelElement(k, 3, ps), LevelElement(k, 3, pt));
    ASSERT_EQ(out.verdict, Verdict::Feasible);
    EXPECT_LE(out.witness->matrix().norm(), 1e-12);
    // Other representatives of the same coset: low-rank pairs sit on the
    // boundary, where the solver may stop short but must never refute.
    const CosetElement canon = cp.quotient(LevelElement(k, 3, ps), LevelElement(k, 3, pt));
    EXPECT_NE(d_cone_member(cp, canon).verdict, Verdict::Infeasible);
    const CosetElement inner =
        cp.quotient(LevelElement(k, 3, ps.shifted(0.05)), LevelElement(k, 3, pt.shifted(0.05)));
    EXPECT_EQ(d_cone_member(cp, inner).verdict, Verdict::Feasible);
  }
}

TEST(coproduct, cones_are_compatible_with_diagonal_compressions) {
  Rng rng(103);
  const auto cp = m2_m2();
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const CosetElement x = random_cone_query(cp, 1 + trial % 2, rng);
    const FeasibilityOutcome out = d_cone_member(cp, x);
    if (out.verdict != Verdict::Feasible) continue;
    ++checked;
    // X in M_{m,k}(D_2), acting blockwise; compress both sides and the witness.
    const int m = 1 + trial % 2;
    ComplexMatrix xmat = ComplexMatrix::Zero(2 * m, 2 * x.level);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < x.level; ++c)
        xmat.block(2 * r, 2 * c, 2, 2) = project_block_diagonal(random_gaussian(2, 2, rng), 2);
    const CosetElement y{m, HermitianMatrix(xmat * x.left.matrix() * xmat.adjoint()),
                         HermitianMatrix(xmat * x.right.matrix() * xmat.adjoint())};
    const HermitianMatrix a(xmat * out.witness->matrix() * xmat.adjoint());
    EXPECT_TRUE(witness_valid(y, 2, a));
    EXPECT_EQ(d_cone_member(cp, y).verdict, Verdict::Feasible);
  }
  EXPECT_GT(checked, 5);
}

TEST(embed, order_isomorphism_at_levels_one_and_two) {
  Rng rng(107);
  const auto cp = m2_m2();
  const double slack = 10.0 * Tolerance{}.psd_slack(0.0);
  int violations = 0;
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 1 + trial % 2;
    HermitianMatrix u = random_hermitian(2 * k, rng);
    u = u.shifted(-min_eigenvalue(u) + (trial % 3 == 0 ? 0.3 : -0.3));
    const CosetElement x = embed_left(cp, LevelElement(k, 2, u));
    const ConeVerdict v = classify_d_cone(cp, x, slack);
    if (v == ConeVerdict::Boundary || v == ConeVerdict::Undecided) continue;
    ++checked;
    if ((v == ConeVerdict::Member) != is_psd(u)) ++violations;
  }
  EXPECT_EQ(violations, 0);
  EXPECT_GT(checked, 50);
}

TEST(embed, examples) {
  const auto cp = m2_m2();
  EXPECT_LE(embed_left(cp, LevelElement::unit(1, 2)).distance(cp.unit(1)), 1e-12);
  EXPECT_LE(embed_right(cp, LevelElement::unit(2, 2)).distance(cp.unit(2)), 1e-12);
  EXPECT_EQ(d_cone_member(cp, embed_left(cp, lvl(kPaperS))).verdict, Verdict::Infeasible);
}

TEST(universal_map, identity_and_expectation) {
  const auto cp = m2_m2();
  const auto phi1 = identity_map(MatrixOperatorSystem::full(2));
  const auto phi2 = diagonal_expectation(2);
  const LinearMatrixMap big = universal_map(cp, phi1, phi2);

  EXPECT_LE((big(cp.to_blocks(cp.unit(1))) - ComplexMatrix::Identity(2, 2)).norm(), 1e-10);
  Rng rng(109);
  for (int trial = 0; trial < 20; ++trial) {
    const HermitianMatrix u = random_hermitian(2, rng);
    EXPECT_LE((big(cp.to_blocks(embed_left(cp, lvl(u)))) - phi1(u.matrix())).norm(), 1e-10);
    EXPECT_LE((big(cp.to_blocks(embed_right(cp, lvl(u)))) - phi2(u.matrix())).norm(), 1e-10);
    const HermitianMatrix s = random_hermitian(2, rng);
    const HermitianMatrix t = random_hermitian(2, rng);
    const ComplexMatrix expected = 0.5 * (phi1(s.matrix()) + phi2(t.matrix()));
    EXPECT_LE((big(cp.to_blocks(cp.quotient(lvl(s), lvl(t)))) - expected).norm(), 1e-10);
  }
  EXPECT_TRUE(is_unital(big));
  EXPECT_TRUE(sampled_kpositive(big, 2, 200, 7, {}, coset_positive_sampler(cp)).passed);
  EXPECT_TRUE(bimodule_map_check(big, 20));
}

TEST(universal_map, rejects_bad_inputs) {
  const auto cp = m2_m2();
  const auto full = MatrixOperatorSystem::full(2);
  ComplexMatrix swap = ComplexMatrix::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  const auto conj_swap = LinearMatrixMap::from_function(
      full, 2, [&](const ComplexMatrix& x) { return ComplexMatrix(swap * x * swap); });
  EXPECT_THROW(universal_map(cp, identity_map(full), conj_swap), IllConditioned);
  EXPECT_THROW(universal_map(cp, identity_map(full), identity_map(MatrixOperatorSystem::diagonal(2))),
               InvalidArgument);
  const auto doubled = LinearMatrixMap::from_function(
      full, 2, [](const ComplexMatrix& x) { return ComplexMatrix(2.0 * x); });
  EXPECT_THROW(universal_map(cp, identity_map(full), doubled), InvalidArgument);
  EXPECT_THROW(universal_map(cp, identity_map(full), transpose_map(2)), InvalidArgument);
}

TEST(intersection_check, examples) {
  const IntersectionReport r = intersection_check(m2_m2());
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.intersection_dim, 2);
  EXPECT_EQ(r.left_dim, 4);
  EXPECT_EQ(r.right_dim, 4);
  const auto d3 = MatrixOperatorSystem::diagonal(3);
  const IntersectionReport rd = intersection_check(build_coproduct(d3, d3));
  EXPECT_TRUE(rd.holds);
  EXPECT_EQ(rd.intersection_dim, 3);
  EXPECT_TRUE(intersection_check(build_coproduct(graph_system(Graph::path(3)), graph_system(Graph(3, {{1, 3}})))).holds);
}

TEST(r_subsystem, demo_values) {
  const RSubsystemReport r = r_subsystem_demo();
  EXPECT_EQ(r.coproduct_dim, 6);
  EXPECT_EQ(r.r_dim, 6);
  EXPECT_TRUE(r.bijection);
  EXPECT_EQ(r.membership.verdict, Verdict::Feasible);
  EXPECT_TRUE(r.given_witness_valid);
  EXPECT_FALSE(r.direct_sum_psd);
  EXPECT_NEAR(r.direct_sum_min_eigenvalue, -0.5, 1e-9);
  EXPECT_TRUE(r.certified);
}
