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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gforce/experiment.hpp"
#include "gforce/io.hpp"

namespace gforce {

/// Process exit codes of the CLI. Stable across versions.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,  // a check failed, or a run failed
  kExitConfigError = 2,
  kExitMissingInputs = 3,
};

struct CliOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;
  std::optional<std::string> seeds;
  std::optional<std::int64_t> horizon;
  int workers = 1;
  std::optional<double> tail_fraction;
  std::optional<double> delta;
  std::optional<double> burn_in;
};

inline constexpr double kDefaultTailFraction = 0.2;
inline constexpr double kDefaultDelta = 0.25;
inline constexpr double kDefaultBurnIn = 0.1;

/// Applies --seeds / --horizon overrides to every run group.
void apply_overrides(ExperimentFile& experiment, const CliOptions& options);

struct CheckFailure {
  std::string run_id;
  std::optional<std::int64_t> n;  // offending checkpoint, when there is one
  std::string message;
};

struct CheckVerdict {
  std::string name;
  CheckType type = CheckType::kForcingSandwich;
  std::size_t total = 0;
  std::size_t passed_count = 0;
  std::size_t required = 0;
  bool passed = false;
  nlohmann::json parameters;  // effective parameters and bound values
  std::vector<CheckFailure> failures;
};

/// Evaluates one check over the trajectories of its run group (and, for
/// phase-order, of its `versus` group).
CheckVerdict evaluate_check(const CheckSpec& check, const std::vector<const StoredTrajectory*>& primary,
                            const std::vector<const StoredTrajectory*>& versus, const CliOptions& options);

nlohmann::json verdict_to_json(const CheckVerdict& verdict);

/// Executes the sweep and writes trajectories/<run_id>.{json,csv} plus
/// manifest.json under the output directory.
int cmd_run(const CliOptions& options, std::ostream& out, std::ostream& err);

/// Runs every configured check against stored trajectories and writes
/// verdicts.json. Exit 0 iff all verdicts pass.
int cmd_check(const CliOptions& options, std::ostream& out, std::ostream& err);

/// Summarizes every stored trajectory in `output_dir`: report.txt,
/// report.json, and the long-format plot_data.csv.
int cmd_report(const std::filesystem::path& output_dir, const CliOptions& options, std::ostream& out,
               std::ostream& err);

/// All trajectories stored under `output_dir`, ordered by run id.
std::vector<StoredTrajectory> load_trajectories(const std::filesystem::path& output_dir);

}  // namespace gforce
