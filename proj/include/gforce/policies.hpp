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
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "gforce/g_function.hpp"

namespace gforce {

enum class PolicyKind { kGForcing, kGIsm, kRoundRobin, kGreedy };

std::string_view to_string(PolicyKind kind);
std::optional<PolicyKind> parse_policy_kind(std::string_view name);
/// True for the two policies parameterized by g.
bool uses_g(PolicyKind kind);

enum class TieRule { kLowestIndex, kSeededUniform };

std::string_view to_string(TieRule rule);
std::optional<TieRule> parse_tie_rule(std::string_view name);

/// Resolves exact ties among candidate arms. Seeded-uniform draws from its own
/// substream and only when there are two or more candidates.
class TieBreaker {
 public:
  TieBreaker(TieRule rule, std::uint64_t run_seed);

  TieRule rule() const { return rule_; }
  std::size_t pick(std::span<const std::size_t> candidates);
  std::uint64_t draws() const { return draws_; }

 private:
  TieRule rule_;
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

/// Mode of the g-Forcing policy at the current time.
enum class ForcingMode { kInitialSweep, kCatchUp, kPlayWinner };

std::string_view to_string(ForcingMode mode);

/// Per-run allocation state. Sample means are kept as (running sum, count),
/// accumulated left to right in draw order.
struct PolicyState {
  explicit PolicyState(std::size_t arms) : counts(arms, 0), sums(arms, 0.0) {}

  std::vector<std::int64_t> counts;
  std::vector<double> sums;
  std::int64_t t = 0;
  ForcingMode mode = ForcingMode::kInitialSweep;
  double gap = 0.0;  // g(t) - min_i T_i(t); maintained for g-Forcing only

  std::size_t size() const { return counts.size(); }
  double mean(std::size_t i) const { return sums[i] / static_cast<double>(counts[i]); }
  std::int64_t min_count() const;
};

/// Records one activation. When `forcing_g` is given, mode and gap are
/// recomputed for the new time.
void update(PolicyState& state, std::size_t arm, double reward, const GFunction* forcing_g = nullptr);

/// X-bar + g / count. Throws std::invalid_argument for count == 0.
double gism_index(double mean, double g_value, std::int64_t count);

/// g-Forcing decision: argmin count while some count is below g(t), else
/// argmax sample mean. Requires state.t >= K.
std::size_t gforcing_step(const PolicyState& state, const GFunction& g, TieBreaker& tie);

/// Same rule with g(t) supplied directly.
std::size_t gforcing_step_with_value(const PolicyState& state, double g_value, TieBreaker& tie);

/// Inflated-sample-mean decision: argmax X-bar_i + g(t)/T_i. Requires state.t >= K.
std::size_t gism_step(const PolicyState& state, const GFunction& g, TieBreaker& tie);
std::size_t gism_step_with_value(const PolicyState& state, double g_value, TieBreaker& tie);

/// Cyclic sampling; arm t mod K.
std::size_t round_robin_step(const PolicyState& state);

/// Play the current winner. Requires state.t >= K.
std::size_t greedy_step(const PolicyState& state, TieBreaker& tie);

/// Dispatches to the step of `kind`. `g` is ignored by the baselines.
std::size_t policy_step(PolicyKind kind, const PolicyState& state, const GFunction& g, TieBreaker& tie);

}  // namespace gforce
