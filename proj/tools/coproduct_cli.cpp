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

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "opsys/coproduct.hpp"
#include "opsys/errors.hpp"
#include "opsys/graph_systems.hpp"
#include "opsys/paper_suite.hpp"
#include "opsys/serialization.hpp"

namespace {

using namespace opsys;

enum ExitCode { kPass = 0, kUsage = 1, kVerificationFailure = 2, kUndecided = 3, kInputError = 4 };

struct GlobalFlags {
  std::uint64_t seed = 42;
  std::optional<double> tol_psd;
  double tol_subspace = 1e-8;
  int max_iter = 20000;
  std::string report_path;
  bool json_only = false;

  Tolerance tolerance() const {
    Tolerance t;
    t.psd_eps = tol_psd;
    t.subspace_eps = tol_subspace;
    return t;
  }

  SolveOptions solve_options() const {
    SolveOptions o;
    o.max_iter = max_iter;
    o.psd = tolerance();
    return o;
  }
};

// SHA-256 over the command name, every flag value and every input file's bytes.
class Digest {
 public:
  Digest() : ctx_(EVP_MD_CTX_new()) { EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr); }
  ~Digest() { EVP_MD_CTX_free(ctx_); }
  Digest(const Digest&) = delete;
  Digest& operator=(const Digest&) = delete;

  void add(const std::string& bytes) {
    const std::string framed = std::to_string(bytes.size()) + ":" + bytes;
    EVP_DigestUpdate(ctx_, framed.data(), framed.size());
  }

  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_, md, &len);
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) {
      out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    }
    return "sha256:" + out.str();
  }

 private:
  EVP_MD_CTX* ctx_;
};

void add_flags(Digest& d, const GlobalFlags& g) {
  std::ostringstream f;
  f << "seed=" << g.seed << ";tol_psd=" << (g.tol_psd ? std::to_string(*g.tol_psd) : "default")
    << ";tol_subspace=" << g.tol_subspace << ";max_iter=" << g.max_iter;
  d.add(f.str());
}

std::string read_input(Digest& d, const std::string& path) {
  const std::string text = read_text_file(path);
  d.add(text);
  return text;
}

Json parse_json(const std::string& text, const std::string& path) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

int exit_code_for(const RunReport& r) {
  bool failed = false;
  for (const auto& c : r.results) failed = failed || c.verdict == CheckVerdict::Fail;
  if (failed) return kVerificationFailure;
  if (r.any_undecided()) return kUndecided;
  return kPass;
}

int emit(RunReport report, const GlobalFlags& g,
         std::chrono::steady_clock::time_point start, const Json& extra = Json()) {
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  Json j = report.to_json();
  if (!extra.is_null()) j["output"] = extra;
  if (!g.json_only) {
    std::cout << report.command << "  inputs " << report.inputs_digest << "  "
              << std::fixed << std::setprecision(1) << report.elapsed_ms << " ms\n"
              << report.table();
    std::cout.unsetf(std::ios::floatfield);
  }
  std::cout << j.dump(2) << '\n';
  if (!g.report_path.empty()) write_json_file(g.report_path, j);
  return exit_code_for(report);
}

Graph load_graph(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    return graph_from_json(parse_json(text, "graph"));
  }
  return graph_from_edge_list(text);
}

int cmd_graph(const GlobalFlags& g, const std::string& edges_path, const std::string& out_path) {
  const auto start = std::chrono::steady_clock::now();
  Digest digest;
  digest.add("graph");
  add_flags(digest, g);
  const Graph graph = load_graph(read_input(digest, edges_path));
  const MatrixOperatorSystem sys = graph_system(graph).with_label(
      "S_G(n=" + std::to_string(graph.vertex_count()) +
      ",|E|=" + std::to_string(graph.edges().size()) + ")");
  const int expected = graph.vertex_count() + 2 * static_cast<int>(graph.edges().size());
  const bool bimodule =
      bimodule_check(sys, DiagonalAlgebra{graph.vertex_count()}, 20, g.seed, g.tolerance());

  RunReport report;
  report.command = "graph";
  report.inputs_digest = digest.hex();
  report.results.push_back({"graph system dimension",
                            sys.dim() == expected ? CheckVerdict::Pass : CheckVerdict::Fail,
                            {{"dim", sys.dim()}, {"expected", expected}}});
  report.results.push_back({"D_n bimodule", bimodule ? CheckVerdict::Pass : CheckVerdict::Fail,
                            {{"n", graph.vertex_count()}}});
  const Json system = system_to_json(sys);
  if (!out_path.empty()) write_json_file(out_path, system);
  return emit(report, g, start, out_path.empty() ? system : Json{{"written", out_path}});
}

int cmd_build(const GlobalFlags& g, const std::string& left_path, const std::string& right_path,
              const std::string& out_path) {
  const auto start = std::chrono::steady_clock::now();
  Digest digest;
  digest.add("build");
  add_flags(digest, g);
  const Tolerance tol = g.tolerance();
  const auto left = system_from_json(parse_json(read_input(digest, left_path), left_path), tol);
  const auto right = system_from_json(parse_json(read_input(digest, right_path), right_path), tol);
  const CoproductSystem cp = CoproductSystem::build(left, right, tol, 20, g.seed);
  const int expected = left.dim() + right.dim() - cp.n();

  RunReport report;
  report.command = "build";
  report.inputs_digest = digest.hex();
  report.results.push_back({"dimension formula",
                            cp.dim() == expected ? CheckVerdict::Pass : CheckVerdict::Fail,
                            {{"dim", cp.dim()},
                             {"dim_left", left.dim()},
                             {"dim_right", right.dim()},
                             {"n", cp.n()},
                             {"expected", expected}}});
  const Json cp_json = coproduct_to_json(cp);
  if (!out_path.empty()) write_json_file(out_path, cp_json);
  return emit(report, g, start, out_path.empty() ? cp_json : Json{{"written", out_path}});
}

CheckVerdict verdict_of(Verdict v) {
  switch (v) {
    case Verdict::Feasible:
      return CheckVerdict::Pass;
    case Verdict::Infeasible:
      return CheckVerdict::Fail;
    case Verdict::Undecided:
      return CheckVerdict::Undecided;
  }
  return CheckVerdict::Undecided;
}

CheckVerdict verdict_of(ConeVerdict v) {
  switch (v) {
    case ConeVerdict::Member:
      return CheckVerdict::Pass;
    case ConeVerdict::NonMember:
      return CheckVerdict::Fail;
    case ConeVerdict::Boundary:
      return CheckVerdict::Boundary;
    case ConeVerdict::Undecided:
      return CheckVerdict::Undecided;
  }
  return CheckVerdict::Undecided;
}

int cmd_member(const GlobalFlags& g, const std::string& cp_path, int level,
               const std::string& s_path, const std::string& t_path, const std::string& cone) {
  const auto start = std::chrono::steady_clock::now();
  Digest digest;
  digest.add("member:" + cone + ":" + std::to_string(level));
  add_flags(digest, g);
  const Tolerance tol = g.tolerance();
  const CoproductSystem cp = coproduct_from_json(parse_json(read_input(digest, cp_path), cp_path), tol);
  const LevelElement s = level_element_from_json(parse_json(read_input(digest, s_path), s_path), cp.n());
  const LevelElement t = level_element_from_json(parse_json(read_input(digest, t_path), t_path), cp.n());
  if (s.level() != level || t.level() != level) {
    throw ShapeMismatch("--level " + std::to_string(level) + " does not match the inputs (levels " +
                        std::to_string(s.level()) + ", " + std::to_string(t.level()) + ")");
  }

  RunReport report;
  report.command = "member";
  report.inputs_digest = digest.hex();
  Json out;
  if (cone == "d") {
    const FeasibilityOutcome o = d_cone_member(cp, s, t, g.solve_options());
    out = outcome_to_json(o);
    report.results.push_back({"D-cone membership", verdict_of(o.verdict), out});
  } else {
    const CConeResult r = c_cone_member(cp, s, t, default_eps_ladder(), g.solve_options());
    out = c_cone_to_json(r);
    report.results.push_back({"C-cone membership", verdict_of(r.verdict), out});
  }
  return emit(report, g, start, out);
}

int cmd_demo_paper(const GlobalFlags& g) {
  const auto start = std::chrono::steady_clock::now();
  Digest digest;
  digest.add("demo-paper");
  add_flags(digest, g);
  const RSubsystemReport r = r_subsystem_demo();

  RunReport report;
  report.command = "demo-paper";
  report.inputs_digest = digest.hex();
  auto pass_if = [](bool ok) { return ok ? CheckVerdict::Pass : CheckVerdict::Fail; };
  report.results.push_back({"R <-> coproduct bijection", pass_if(r.bijection),
                            {{"r_dim", r.r_dim}, {"coproduct_dim", r.coproduct_dim}, {"q_rank", r.q_rank}}});
  report.results.push_back({"coset of s (+) t in D_1", verdict_of(r.membership.verdict),
                            outcome_to_json(r.membership)});
  report.results.push_back({"witness A = I_2 valid", pass_if(r.given_witness_valid), Json::object()});
  report.results.push_back({"s (+) t not PSD", pass_if(!r.direct_sum_psd),
                            {{"min_eigenvalue", r.direct_sum_min_eigenvalue}}});
  report.results.push_back({"certified", pass_if(r.certified), Json::object()});
  return emit(report, g, start);
}

int cmd_paper_suite(GlobalFlags g, const std::string& config_path, int samples) {
  const auto start = std::chrono::steady_clock::now();
  Digest digest;
  digest.add("paper-suite");
  if (!config_path.empty()) {
    const std::string text = read_input(digest, config_path);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return kUsage;
    const Json cfg = parse_json(text, config_path);
    if (!cfg.is_object()) throw ParseError(config_path + ": config must be a JSON object");
    try {
      if (cfg.contains("seed")) g.seed = cfg["seed"].get<std::uint64_t>();
      if (cfg.contains("samples")) samples = cfg["samples"].get<int>();
      if (cfg.contains("max_iter")) g.max_iter = cfg["max_iter"].get<int>();
      if (cfg.contains("tol_psd")) g.tol_psd = cfg["tol_psd"].get<double>();
      if (cfg.contains("tol_subspace")) g.tol_subspace = cfg["tol_subspace"].get<double>();
    } catch (const Json::exception& e) {
      throw ParseError(config_path + ": " + e.what());
    }
  }
  if (samples < 1) throw InvalidArgument("samples must be positive");
  add_flags(digest, g);
  digest.add("samples=" + std::to_string(samples));

  SuiteOptions opts;
  opts.seed = g.seed;
  opts.tol = g.tolerance();
  opts.solve = g.solve_options();
  opts.samples = samples;
  RunReport report = run_paper_suite(opts);
  report.inputs_digest = digest.hex();
  return emit(report, g, start);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator-system coproducts over the diagonal algebra D_n"};
  GlobalFlags g;
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--tol-psd", g.tol_psd, "absolute PSD slack (default 1e-9 (1 + ||x||))");
  app.add_option("--tol-subspace", g.tol_subspace, "subspace membership tolerance")
      ->capture_default_str();
  app.add_option("--max-iter", g.max_iter, "Dykstra iteration budget")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--report", g.report_path, "also write the JSON report to this file");
  app.add_flag("--json", g.json_only, "print only the JSON report");
  app.require_subcommand(1);

  std::string edges_path, graph_out;
  auto* graph = app.add_subcommand("graph", "build S_G from an edge list or graph JSON");
  graph->add_option("--edges", edges_path, "edge list (first token n, then pairs) or {n, edges}")
      ->required();
  graph->add_option("--out", graph_out, "write the system JSON here");

  std::string left_path, right_path, build_out;
  auto* build = app.add_subcommand("build", "build the coproduct S (+)_{D_n} T");
  build->add_option("--left", left_path, "system JSON for S")->required();
  build->add_option("--right", right_path, "system JSON for T")->required();
  build->add_option("--out", build_out, "write the coproduct JSON here");

  std::string cp_path, s_path, t_path, cone = "d";
  int level = 1;
  auto* member = app.add_subcommand("member", "decide membership of q(s (+) t) in the cone");
  member->add_option("--cp", cp_path, "coproduct JSON")->required();
  member->add_option("--level", level, "matrix level k")->required()->check(CLI::Range(1, kMaxLevel));
  member->add_option("--s", s_path, "level-k element of S (matrix JSON)")->required();
  member->add_option("--t", t_path, "level-k element of T (matrix JSON)")->required();
  member->add_option("--cone", cone, "d (exact quotient cone) or c (Archimedean ladder)")
      ->check(CLI::IsMember({"d", "c"}))
      ->capture_default_str();

  app.add_subcommand("demo-paper", "replay the M_2 (+)_{D_2} M_2 counterexample");

  std::string config_path;
  int samples = 20;
  auto* suite = app.add_subcommand("paper-suite", "run the regression suite");
  suite->add_option("--config", config_path, "JSON with seed, samples, max_iter, tol_psd, tol_subspace");
  suite->add_option("--samples", samples, "random samples per sampled check")->capture_default_str();

  if (argc < 2) {
    std::cerr << app.help();
    return kUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (graph->parsed()) return cmd_graph(g, edges_path, graph_out);
    if (build->parsed()) return cmd_build(g, left_path, right_path, build_out);
    if (member->parsed()) return cmd_member(g, cp_path, level, s_path, t_path, cone);
    if (suite->parsed()) {
      const int code = cmd_paper_suite(g, config_path, samples);
      if (code == kUsage) std::cerr << "empty config\n" << suite->help();
      return code;
    }
    return cmd_demo_paper(g);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const ShapeMismatch& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const NotInSystem& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const InvalidArgument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const IncompatibleSystems& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainNotFull& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const MissingRepresentation& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kVerificationFailure;
  }
}
