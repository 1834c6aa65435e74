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

// Run reports and the fixed regression suite of worked coproduct examples.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "opsys/coproduct.hpp"
#include "opsys/feasibility.hpp"
#include "opsys/random.hpp"

namespace opsys {

enum class CheckVerdict { Pass, Fail, Boundary, Undecided };

std::string to_string(CheckVerdict v);

struct CheckResult {
  std::string name;
  CheckVerdict verdict = CheckVerdict::Fail;
  nlohmann::json details = nlohmann::json::object();
};

struct RunReport {
  std::string command;
  std::string inputs_digest;
  std::vector<CheckResult> results;
  double elapsed_ms = 0.0;

  /// Every check passed; boundary verdicts count as passes.
  bool all_pass() const;
  bool any_undecided() const;
  nlohmann::json to_json() const;
  /// One aligned line per check.
  std::string table() const;
};

/// Hermitian s in M_k(S), t in M_k(T), both shifted by -lambda_min(s + t)/2
/// plus a uniform offset in [-0.5, 1.5], so that members and non-members
/// of D_k both occur with fair frequency.
CosetElement random_cone_query(const CoproductSystem& cp, int level, Rng& rng);

struct SuiteOptions {
  std::uint64_t seed = 42;
  Tolerance tol;
  SolveOptions solve;
  /// Random draws per sampled check.
  int samples = 20;
};

RunReport run_paper_suite(const SuiteOptions& opts = {});

}  // namespace opsys
