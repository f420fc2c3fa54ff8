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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gforce/diagnostics.hpp"
#include "gforce/engine.hpp"

namespace gforce {

/// Labels attached to a stored trajectory.
struct RunLabels {
  std::string run_id;
  std::string group;
  std::string instance;
  std::string g;
  std::string policy;
};

struct StoredTrajectory {
  RunLabels labels;
  Trajectory trajectory;
};

nlohmann::json g_to_json(const GFunction& g);
GFunction g_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

/// {run_id, labels, digest (hex), config, records[], decisions[]}.
nlohmann::json trajectory_to_json(const RunLabels& labels, const Trajectory& traj);
/// Throws std::runtime_error on a malformed document.
StoredTrajectory trajectory_from_json(const nlohmann::json& j);

std::string digest_hex(std::uint64_t digest);

/// Header: run_id,seed,policy,g_kind,n,T_1..T_K,pseudo_regret,sample_regret
std::string trajectory_csv_header(std::size_t arms);
/// Header plus one row per checkpoint.
std::string trajectory_to_csv(const RunLabels& labels, const Trajectory& traj);

/// Header: run_id,label,n,value. Skipped entries are omitted.
std::string diagnostic_csv_header();
std::string diagnostic_csv_rows(const std::string& run_id, const std::string& label, const DiagnosticSeries& series);

/// Writes `text` to `path`, creating parent directories. Throws on failure.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace gforce
