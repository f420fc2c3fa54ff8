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
#include <string>
#include <string_view>
#include <vector>

#include "gforce/bandit.hpp"
#include "gforce/engine.hpp"
#include "gforce/g_function.hpp"

namespace gforce {

/// Limits and remainder coefficients predicted for an instance. All sums run
/// over sub-optimal arms only.
struct TheoremBounds {
  double s_delta = 0.0;              // lim R/g under g-Forcing
  std::int64_t k_minus_one = 0;      // lim R/g under g-ISM, unique optimum
  double upper_remainder_coeff = 0;  //  2 sqrt(2) sum sigma_i / sqrt(gap_i)
  double lower_remainder_coeff = 0;  // -3 sqrt(2) sum sigma_i / sqrt(gap_i)
  std::vector<double> per_arm_limit; // 1/gap_i, 0 for optimal arms

  static TheoremBounds of(const BanditInstance& instance);
};

enum class SeriesLabel {
  kRegretOverG,
  kForcingRemainder,
  kIsmRemainderNormalized,
  kPerArmCountOverG,
  kOptimalShareRatio,
};

std::string_view to_string(SeriesLabel label);

/// A diagnostic evaluated at every checkpoint. Entries that are undefined at
/// a checkpoint are flagged in `skipped` and hold NaN.
struct DiagnosticSeries {
  SeriesLabel label = SeriesLabel::kRegretOverG;
  std::vector<std::int64_t> n;
  std::vector<double> values;
  std::vector<bool> skipped;
  std::optional<std::size_t> arm;  // per-arm series only
  bool flagged = false;            // outside the regime the theory covers

  std::size_t size() const { return n.size(); }
};

/// R(n) / g(n).
DiagnosticSeries regret_ratio(const Trajectory& traj, const GFunction& g);

/// R(n) - S_gap g(n).
DiagnosticSeries forcing_remainder(const Trajectory& traj, const TheoremBounds& bounds, const GFunction& g);

struct SandwichViolation {
  std::int64_t n = 0;
  std::size_t arm = 0;
  std::int64_t count = 0;
  double lower = 0.0;  // g(n) - 2 delta
  double upper = 0.0;  // ceil(g(n))
};

struct SandwichVerdict {
  bool passed = true;
  std::size_t checked = 0;  // (checkpoint, arm) pairs examined
  std::vector<bool> checkpoint_passed;  // per checkpoint; burn-in entries stay true
  std::vector<SandwichViolation> violations;
};

/// g(n) - 2 delta <= T_i(n) <= ceil(g(n)) for every sub-optimal arm at every
/// checkpoint with n >= burn_in_fraction * horizon. Throws
/// std::invalid_argument unless 0 < delta < 0.5.
SandwichVerdict check_forcing_sandwich(const Trajectory& traj, const GFunction& g, double delta,
                                       double burn_in_fraction = 0.1);

/// gap_i T_i(n) / g(n) for each sub-optimal arm, in arm order. Series are
/// flagged when the optimum is not unique.
std::vector<DiagnosticSeries> ism_count_ratio(const Trajectory& traj, const TheoremBounds& bounds,
                                              const GFunction& g);

/// (R(n) - (K-1) g(n)) / sqrt(g(n) ln ln g(n)); checkpoints with g(n) <= e
/// are skipped.
DiagnosticSeries ism_remainder_normalized(const Trajectory& traj, const TheoremBounds& bounds,
                                          const GFunction& g);

/// min over optimal arms of T_i / max over optimal arms of T_i. Throws
/// std::invalid_argument when the optimum is unique.
DiagnosticSeries optimal_share_ratio(const Trajectory& traj, const BanditInstance& instance);

struct TailSummary {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t points = 0;
};

/// Summary over the last ceil(tail_fraction * size) checkpoints, ignoring
/// skipped entries. Throws std::invalid_argument for an empty series, a
/// fraction outside (0, 1], or a tail with nothing but skipped entries.
TailSummary tail_estimate(const DiagnosticSeries& series, double tail_fraction = 0.2);

}  // namespace gforce
