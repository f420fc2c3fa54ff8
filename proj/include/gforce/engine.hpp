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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gforce/bandit.hpp"
#include "gforce/g_function.hpp"
#include "gforce/policies.hpp"

namespace gforce {

/// Invalid run description, detected before any sampling.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Decision logs are kept up to this horizon unless asked otherwise.
inline constexpr std::int64_t kDecisionLogLimit = 100'000;
/// run_reference() refuses horizons above this.
inline constexpr std::int64_t kReferenceHorizonLimit = 100'000;

struct RunConfig {
  explicit RunConfig(BanditInstance inst) : instance(std::move(inst)) {}

  BanditInstance instance;
  PolicyKind policy = PolicyKind::kGForcing;
  GFunction g = GFunction::log();  // ignored by the baselines
  TieRule tie = TieRule::kLowestIndex;
  std::int64_t horizon = 1000;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> checkpoints;  // empty: default_checkpoints(K, horizon)
  std::optional<bool> record_decisions;   // empty: horizon <= kDecisionLogLimit

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// About `points` log-spaced integers from K to horizon; strictly increasing,
/// last element == horizon.
std::vector<std::int64_t> default_checkpoints(std::size_t arms, std::int64_t horizon, int points = 50);

/// Checkpoint grid the run will use. Throws ConfigError if the explicit grid
/// is not strictly increasing inside [K, horizon] ending at horizon.
std::vector<std::int64_t> resolved_checkpoints(const RunConfig& config);

/// Throws ConfigError for horizon < K, a bad grid, or an inadmissible g on a
/// g-driven policy.
void validate(const RunConfig& config);

/// FNV-1a over a canonical text form of the config (grid resolved).
std::uint64_t config_digest(const RunConfig& config);
std::string canonical_form(const RunConfig& config);

struct CheckpointRecord {
  std::int64_t n = 0;
  std::vector<std::int64_t> counts;
  double pseudo_regret = 0.0;
  double sample_regret = 0.0;
  std::vector<double> means;

  friend bool operator==(const CheckpointRecord&, const CheckpointRecord&) = default;
};

struct Trajectory {
  RunConfig config;
  std::uint64_t digest = 0;
  std::vector<CheckpointRecord> records;
  std::vector<std::uint32_t> decisions;  // empty unless logged

  const CheckpointRecord& final_record() const { return records.back(); }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Initial sweep over arms 0..K-1, then the policy loop to the horizon.
/// Pure function of the config.
Trajectory run(const RunConfig& config);

/// Verification engine: keeps every reward and re-sums each arm's history
/// left to right before every decision. Must agree with run() bit for bit.
Trajectory run_reference(const RunConfig& config);

struct SweepResult {
  std::uint64_t digest = 0;
  std::optional<Trajectory> trajectory;
  std::string error;  // set iff trajectory is empty

  bool ok() const { return trajectory.has_value(); }
};

/// Runs every config on up to `parallelism` OpenMP threads. Results are in
/// input order and independent of parallelism; a failing config only sets
/// its own error.
std::vector<SweepResult> sweep(std::span<const RunConfig> configs, int parallelism);

/// Single-threaded sweep, kept as the baseline for sweep().
std::vector<SweepResult> sweep_serial(std::span<const RunConfig> configs);

}  // namespace gforce
