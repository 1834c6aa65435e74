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

#include "opsys/paper_suite.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "opsys/graph_systems.hpp"

namespace opsys {

using nlohmann::json;

namespace {

CheckVerdict pass_if(bool ok) { return ok ? CheckVerdict::Pass : CheckVerdict::Fail; }

Graph random_graph(int n, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (coin(rng)) edges.emplace_back(i, j);
    }
  }
  return Graph(n, edges);
}

double query_scale(const CosetElement& x) {
  return std::max(spectral_norm(x.left), spectral_norm(x.right));
}

CheckResult check_r_subsystem() {
  const RSubsystemReport r = r_subsystem_demo();
  CheckResult c{"r_subsystem_demo", CheckVerdict::Fail, {}};
  c.details = {{"r_dim", r.r_dim},
               {"coproduct_dim", r.coproduct_dim},
               {"q_rank", r.q_rank},
               {"membership", to_string(r.membership.verdict)},
               {"witness_I2_valid", r.given_witness_valid},
               {"direct_sum_min_eigenvalue", r.direct_sum_min_eigenvalue}};
  c.verdict = pass_if(r.certified && r.r_dim == 6 &&
                      std::abs(r.direct_sum_min_eigenvalue + 0.5) <= 1e-9);
  return c;
}

CheckResult check_intersection() {
  const auto m2 = MatrixOperatorSystem::full(2);
  const IntersectionReport r = intersection_check(CoproductSystem::build(m2, m2));
  CheckResult c{"intersection M2 (+)_D2 M2", CheckVerdict::Fail, {}};
  c.details = {{"holds", r.holds}, {"intersection_dim", r.intersection_dim}};
  c.verdict = pass_if(r.holds && r.intersection_dim == 2);
  return c;
}

CheckResult check_dimensions(Rng& rng, int samples) {
  CheckResult c{"dimension formula", CheckVerdict::Pass, json::array()};
  auto record = [&](const MatrixOperatorSystem& s, const MatrixOperatorSystem& t) {
    const CoproductSystem cp = CoproductSystem::build(s, t);
    const int expected = s.dim() + t.dim() - s.ambient_dim();
    c.details.push_back({{"left", s.label()}, {"right", t.label()}, {"dim", cp.dim()},
                         {"expected", expected}});
    if (cp.dim() != expected) c.verdict = CheckVerdict::Fail;
  };
  record(MatrixOperatorSystem::full(2), MatrixOperatorSystem::full(2));
  record(MatrixOperatorSystem::diagonal(3), MatrixOperatorSystem::diagonal(3));
  record(graph_system(Graph::complete(2)), MatrixOperatorSystem::diagonal(2));
  std::uniform_int_distribution<int> nd(2, 5);
  for (int i = 0; i < samples / 2; ++i) {
    const int n = nd(rng);
    record(graph_system(random_graph(n, rng)), graph_system(random_graph(n, rng)));
  }
  return c;
}

CheckResult check_kernel_purity(Rng& rng, int samples) {
  CheckResult c{"kernel purity", CheckVerdict::Pass, {}};
  std::normal_distribution<double> normal(0.0, 1.0);
  int violations = 0;
  for (int t = 0; t < samples; ++t) {
    const int n = 2 + t % 3;
    std::vector<double> d(static_cast<size_t>(n));
    for (auto& x : d) x = normal(rng);
    const HermitianMatrix a = HermitianMatrix::diagonal(d);
    if (is_psd(HermitianMatrix(direct_sum(a.matrix(), -a.matrix())))) ++violations;
  }
  for (int n = 2; n <= 3; ++n) {
    for (int i = 0; i < n; ++i) {
      const ComplexMatrix e = matrix_unit(n, i, i);
      if (is_psd(HermitianMatrix(direct_sum(e, -e)))) ++violations;
    }
  }
  c.details = {{"violations", violations}};
  c.verdict = pass_if(violations == 0);
  return c;
}

CheckResult check_proximinality(Rng& rng, const SuiteOptions& opts) {
  const std::vector<CoproductSystem> cps = {
      CoproductSystem::build(MatrixOperatorSystem::full(2), MatrixOperatorSystem::full(2)),
      CoproductSystem::build(graph_system(Graph::path(3)), graph_system(Graph::complete(3))),
      CoproductSystem::build(MatrixOperatorSystem::full(3), MatrixOperatorSystem::diagonal(3)),
  };
  std::uniform_int_distribution<int> pick(0, static_cast<int>(cps.size()) - 1);
  std::uniform_int_distribution<int> level(1, 2);
  int agree = 0, boundary = 0, undecided = 0, disagree = 0;
  json unresolved = json::array();
  for (int t = 0; t < opts.samples; ++t) {
    const CoproductSystem& cp = cps[static_cast<size_t>(pick(rng))];
    const CosetElement x = random_cone_query(cp, level(rng), rng);
    const Verdict d = d_cone_member(cp, x, opts.solve).verdict;
    const ConeVerdict c = c_cone_member(cp, x, default_eps_ladder(), opts.solve).verdict;
    const bool same = (d == Verdict::Feasible && c == ConeVerdict::Member) ||
                      (d == Verdict::Infeasible && c == ConeVerdict::NonMember);
    if (same) {
      ++agree;
      continue;
    }
    const double slack = 10.0 * opts.tol.psd_slack(query_scale(x));
    const ConeVerdict strict = classify_d_cone(cp, x, slack, opts.solve);
    unresolved.push_back({{"query", t},
                          {"system", cp.coset_space().label()},
                          {"level", x.level},
                          {"d_cone", to_string(d)},
                          {"c_cone", to_string(c)},
                          {"strict", to_string(strict)}});
    if (strict == ConeVerdict::Boundary) {
      ++boundary;
    } else if (strict == ConeVerdict::Undecided || d == Verdict::Undecided ||
               c == ConeVerdict::Undecided) {
      ++undecided;
    } else {
      ++disagree;
    }
  }
  CheckResult c{"proximinality (C-cone == D-cone)", CheckVerdict::Pass, {}};
  c.details = {{"agree", agree},
               {"boundary", boundary},
               {"undecided", undecided},
               {"disagree", disagree},
               {"unresolved", unresolved}};
  if (disagree > 0) {
    c.verdict = CheckVerdict::Fail;
  } else if (undecided > 0) {
    c.verdict = CheckVerdict::Undecided;
  } else {
    c.verdict = boundary > 0 ? CheckVerdict::Boundary : CheckVerdict::Pass;
  }
  return c;
}

CheckResult check_embedding(Rng& rng, const SuiteOptions& opts) {
  const auto m2 = MatrixOperatorSystem::full(2);
  const CoproductSystem cp = CoproductSystem::build(m2, m2);
  std::uniform_int_distribution<int> level(1, 2);
  std::uniform_real_distribution<double> offset(-0.5, 0.5);
  int checked = 0, excluded = 0, violations = 0;
  for (int t = 0; t < opts.samples; ++t) {
    const int k = level(rng);
    const HermitianMatrix h = random_level_hermitian(m2, k, rng);
    const HermitianMatrix u = h.shifted(-min_eigenvalue(h) + offset(rng));
    const double lo = min_eigenvalue(u);
    if (std::abs(lo) < 10.0 * opts.tol.psd_slack(spectral_norm(u))) {
      ++excluded;
      continue;
    }
    ++checked;
    const CConeResult r =
        c_cone_member(cp, embed_left(cp, LevelElement(k, 2, u)), default_eps_ladder(), opts.solve);
    if ((lo > 0.0) != (r.verdict == ConeVerdict::Member)) ++violations;
  }
  CheckResult c{"embedding order isomorphism", CheckVerdict::Pass, {}};
  c.details = {{"checked", checked}, {"excluded_boundary", excluded}, {"violations", violations}};
  c.verdict = pass_if(violations == 0);
  return c;
}

CheckResult check_generated_algebras() {
  const int k3 = generated_algebra(graph_system(Graph::complete(3))).dim();
  const int d3 = generated_algebra(MatrixOperatorSystem::diagonal(3)).dim();
  const int p3 = generated_algebra(graph_system(Graph::path(3))).dim();
  CheckResult c{"generated algebras", CheckVerdict::Fail, {}};
  c.details = {{"C*(S_K3)", k3}, {"C*(D3)", d3}, {"C*(S_P3)", p3}};
  c.verdict = pass_if(k3 == 9 && d3 == 3 && p3 == 9);
  return c;
}

CheckResult check_universal_map(const SuiteOptions& opts) {
  const auto m2 = MatrixOperatorSystem::full(2);
  const CoproductSystem cp = CoproductSystem::build(m2, m2);
  const LinearMatrixMap phi1 = identity_map(m2);
  const LinearMatrixMap phi2 = diagonal_expectation(2);
  const LinearMatrixMap big_phi = universal_map(cp, phi1, phi2, 50, opts.seed);

  const double unit_err = (big_phi(cp.unit(1).as_direct_sum()) - ComplexMatrix::Identity(2, 2)).norm();
  double left_err = 0.0, right_err = 0.0;
  for (const auto& b : m2.basis()) {
    const LevelElement u(1, 2, b);
    left_err = std::max(left_err, (big_phi(embed_left(cp, u).as_direct_sum()) - phi1(b.matrix())).norm());
    right_err =
        std::max(right_err, (big_phi(embed_right(cp, u).as_direct_sum()) - phi2(b.matrix())).norm());
  }
  const KPositivityResult kp =
      sampled_kpositive(big_phi, 2, 10 * opts.samples, opts.seed, opts.tol, coset_positive_sampler(cp));
  const bool bimodule = bimodule_map_check(big_phi, opts.samples);
  CheckResult c{"universal map (id, E)", CheckVerdict::Fail, {}};
  c.details = {{"unit_error", unit_err},
               {"left_error", left_err},
               {"right_error", right_err},
               {"kpositive_trials", kp.trials_run},
               {"kpositive", kp.passed},
               {"bimodule", bimodule}};
  c.verdict = pass_if(unit_err < 1e-10 && left_err < 1e-10 && right_err < 1e-10 && kp.passed &&
                      bimodule);
  return c;
}

}  // namespace

std::string to_string(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::Pass:
      return "pass";
    case CheckVerdict::Fail:
      return "fail";
    case CheckVerdict::Boundary:
      return "boundary";
    case CheckVerdict::Undecided:
      return "undecided";
  }
  return "fail";
}

bool RunReport::all_pass() const {
  for (const auto& r : results) {
    if (r.verdict != CheckVerdict::Pass && r.verdict != CheckVerdict::Boundary) return false;
  }
  return true;
}

bool RunReport::any_undecided() const {
  for (const auto& r : results) {
    if (r.verdict == CheckVerdict::Undecided) return true;
  }
  return false;
}

json RunReport::to_json() const {
  json results_json = json::array();
  for (const auto& r : results) {
    results_json.push_back({{"name", r.name}, {"verdict", to_string(r.verdict)}, {"details", r.details}});
  }
  return json{{"command", command},
              {"inputs", inputs_digest},
              {"results", results_json},
              {"elapsed_ms", elapsed_ms}};
}

std::string RunReport::table() const {
  std::ostringstream out;
  for (const auto& r : results) {
    out << std::left << std::setw(36) << r.name << std::setw(10) << to_string(r.verdict)
        << r.details.dump() << '\n';
  }
  return out.str();
}

CosetElement random_cone_query(const CoproductSystem& cp, int level, Rng& rng) {
  const HermitianMatrix s = random_level_hermitian(cp.left(), level, rng);
  const HermitianMatrix t = random_level_hermitian(cp.right(), level, rng);
  std::uniform_real_distribution<double> offset(-0.5, 1.5);
  const double shift = -0.5 * min_eigenvalue(s + t) + offset(rng);
  return cp.quotient(LevelElement(level, cp.n(), s.shifted(shift)),
                     LevelElement(level, cp.n(), t.shifted(shift)));
}

RunReport run_paper_suite(const SuiteOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(opts.seed);
  RunReport report;
  report.command = "paper-suite";
  report.inputs_digest = "seed=" + std::to_string(opts.seed);
  report.results.push_back(check_r_subsystem());
  report.results.push_back(check_intersection());
  report.results.push_back(check_dimensions(rng, opts.samples));
  report.results.push_back(check_kernel_purity(rng, opts.samples));
  report.results.push_back(check_proximinality(rng, opts));
  report.results.push_back(check_embedding(rng, opts));
  report.results.push_back(check_generated_algebras());
  report.results.push_back(check_universal_map(opts));
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace opsys
