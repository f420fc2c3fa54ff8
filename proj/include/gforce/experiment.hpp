// Copyright 2026 The gforce Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment files: a flat keyed text format with named sections.
//
//   # comment
//   [instance bern3]
//   arms = bernoulli(0.9), bernoulli(0.6), bernoulli(0.5)
//
//   [g sqrt]
//   kind = power            # log | iterated-log | power | sqrt-lnln | custom-table
//   exponent = 0.5          # scale, shift optional; table = 1:0.5, 10:2, ... for custom-table
//
//   [policy forcing]
//   kind = g-forcing        # g-forcing | g-ism | round-robin | greedy
//   tie = lowest-index      # or seeded-uniform
//
//   [run main]
//   instances = bern3
//   g = sqrt                # may be omitted when every policy is a baseline
//   policies = forcing
//   seeds = 0..31
//   horizon = 1000000
//   checkpoints = 50        # optional, number of log-spaced points
//
//   [check limit]
//   type = regret-ratio     # see CheckType
//   run = main
//   min_pass = 29/32
//
//   [output]
//   dir = results

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gforce/bandit.hpp"
#include "gforce/engine.hpp"
#include "gforce/g_function.hpp"
#include "gforce/policies.hpp"

namespace gforce {

/// Parse or resolution failure; `line` is 1-based, 0 when not tied to a line.
class ExperimentError : public std::runtime_error {
 public:
  ExperimentError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

struct PolicySpec {
  PolicyKind kind = PolicyKind::kGForcing;
  TieRule tie = TieRule::kLowestIndex;
};

struct RunGroup {
  std::string name;
  std::vector<std::string> instances;
  std::vector<std::string> g_functions;  // empty: baselines only
  std::vector<std::string> policies;
  std::vector<std::uint64_t> seeds;
  std::int64_t horizon = 0;
  int checkpoint_points = 50;
  int line = 0;
};

enum class CheckType {
  kForcingSandwich,  // delta, burn_in
  kRegretRatio,      // expect = s-delta | k-minus-one | <number>; lo, hi multipliers; tail_fraction
  kForcingRemainder, // slack: final R - S g in [-slack, S + slack]
  kIsmCountRatio,    // lo, hi on final gap_i T_i / g for every sub-optimal arm
  kIsmRemainder,     // margin around the remainder coefficients at the final checkpoint
  kPhaseOrder,       // run vs versus: final optimal share larger under `run`, paired by seed
  kRoundRobinRate,   // |R/n - S/K| <= K/n + tolerance at the final checkpoint
};

std::string_view to_string(CheckType type);
std::optional<CheckType> parse_check_type(std::string_view name);

struct CheckSpec {
  std::string name;
  CheckType type = CheckType::kForcingSandwich;
  std::string run;
  std::string versus;                 // phase-order only
  std::optional<std::string> policy;  // restrict to one policy name
  std::optional<std::string> g;       // restrict to one g name
  std::map<std::string, double> params;
  std::string expect;                 // regret-ratio only
  double min_pass = 1.0;              // fraction of trajectories (pairs) that must pass
  int line = 0;

  double param(const std::string& key, double fallback) const;
};

struct ExperimentFile {
  std::map<std::string, BanditInstance> instances;
  std::map<std::string, GFunction> g_functions;
  std::map<std::string, PolicySpec> policies;
  std::vector<RunGroup> runs;
  std::vector<CheckSpec> checks;
  std::string output_dir = "results";
};

/// Parses and resolves names. Throws ExperimentError.
ExperimentFile parse_experiment(std::string_view text);
ExperimentFile load_experiment(const std::filesystem::path& path);

/// "0..31", "1,4,9", or a mix such as "0..3,10". Throws std::invalid_argument.
std::vector<std::uint64_t> parse_seed_range(std::string_view text);

/// "29/32" or "0.9" as a fraction in [0, 1]. Throws std::invalid_argument.
double parse_pass_fraction(std::string_view text);

/// One concrete run of a group's cross product.
struct PlannedRun {
  std::string run_id;  // group.instance.g.policy.s<seed>
  std::string group;
  std::string instance;
  std::string g;  // "-" when the policy ignores g and the group names none
  std::string policy;
  RunConfig config;
};

/// Expands every run group in file order (instances x g x policies x seeds).
std::vector<PlannedRun> plan_runs(const ExperimentFile& experiment);

}  // namespace gforce
