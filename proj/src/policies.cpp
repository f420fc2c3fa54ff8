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

#include "gforce/policies.hpp"

#include <algorithm>
#include <stdexcept>

#include "gforce/bandit.hpp"

namespace gforce {

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kGForcing: return "g-forcing";
    case PolicyKind::kGIsm: return "g-ism";
    case PolicyKind::kRoundRobin: return "round-robin";
    case PolicyKind::kGreedy: return "greedy";
  }
  return "?";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view name) {
  for (auto k : {PolicyKind::kGForcing, PolicyKind::kGIsm, PolicyKind::kRoundRobin, PolicyKind::kGreedy}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

bool uses_g(PolicyKind kind) { return kind == PolicyKind::kGForcing || kind == PolicyKind::kGIsm; }

std::string_view to_string(TieRule rule) {
  return rule == TieRule::kLowestIndex ? "lowest-index" : "seeded-uniform";
}

std::optional<TieRule> parse_tie_rule(std::string_view name) {
  if (name == "lowest-index") return TieRule::kLowestIndex;
  if (name == "seeded-uniform") return TieRule::kSeededUniform;
  return std::nullopt;
}

std::string_view to_string(ForcingMode mode) {
  switch (mode) {
    case ForcingMode::kInitialSweep: return "initial-sweep";
    case ForcingMode::kCatchUp: return "catch-up";
    case ForcingMode::kPlayWinner: return "play-winner";
  }
  return "?";
}

TieBreaker::TieBreaker(TieRule rule, std::uint64_t run_seed)
    : rule_(rule), engine_(tie_stream_seed(run_seed)) {}

std::size_t TieBreaker::pick(std::span<const std::size_t> candidates) {
  if (candidates.empty()) throw std::logic_error("TieBreaker::pick: no candidates");
  if (candidates.size() == 1 || rule_ == TieRule::kLowestIndex) return candidates.front();
  ++draws_;
  std::uniform_int_distribution<std::size_t> dist(0, candidates.size() - 1);
  return candidates[dist(engine_)];
}

std::int64_t PolicyState::min_count() const { return *std::min_element(counts.begin(), counts.end()); }

void update(PolicyState& state, std::size_t arm, double reward, const GFunction* forcing_g) {
  state.counts[arm] += 1;
  state.sums[arm] += reward;
  state.t += 1;
  if (forcing_g == nullptr) return;
  if (state.t < static_cast<std::int64_t>(state.size())) {
    state.mode = ForcingMode::kInitialSweep;
    return;
  }
  const double g = eval_g(*forcing_g, state.t);
  const auto lo = state.min_count();
  state.gap = g - static_cast<double>(lo);
  state.mode = static_cast<double>(lo) >= g ? ForcingMode::kPlayWinner : ForcingMode::kCatchUp;
}

double gism_index(double mean, double g_value, std::int64_t count) {
  if (count <= 0) throw std::invalid_argument("gism_index: count must be >= 1");
  return mean + g_value / static_cast<double>(count);
}

namespace {

// Arms whose score equals the maximum bit for bit, in index order.
template <typename Score>
std::size_t argmax(std::size_t arms, Score score, TieBreaker& tie) {
  double best = score(0);
  std::size_t best_arm = 0;
  std::size_t equal = 1;
  for (std::size_t i = 1; i < arms; ++i) {
    const double s = score(i);
    if (s > best) {
      best = s;
      best_arm = i;
      equal = 1;
    } else if (s == best) {
      ++equal;
    }
  }
  if (equal == 1) return best_arm;
  std::vector<std::size_t> ties;
  for (std::size_t i = best_arm; i < arms; ++i) {
    if (score(i) == best) ties.push_back(i);
  }
  return tie.pick(ties);
}

std::size_t argmin_count(const PolicyState& state, TieBreaker& tie) {
  const auto lo = state.min_count();
  const auto equal = std::count(state.counts.begin(), state.counts.end(), lo);
  if (equal == 1) {
    return static_cast<std::size_t>(std::find(state.counts.begin(), state.counts.end(), lo) - state.counts.begin());
  }
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state.counts[i] == lo) ties.push_back(i);
  }
  return tie.pick(ties);
}

void require_swept(const PolicyState& state) {
  if (state.t < static_cast<std::int64_t>(state.size())) {
    throw std::logic_error("policy step before the initial sweep completed");
  }
}

}  // namespace

std::size_t gforcing_step_with_value(const PolicyState& state, double g_value, TieBreaker& tie) {
  require_swept(state);
  if (static_cast<double>(state.min_count()) >= g_value) {
    return argmax(state.size(), [&](std::size_t i) { return state.mean(i); }, tie);
  }
  return argmin_count(state, tie);
}

std::size_t gforcing_step(const PolicyState& state, const GFunction& g, TieBreaker& tie) {
  return gforcing_step_with_value(state, eval_g(g, state.t), tie);
}

std::size_t gism_step_with_value(const PolicyState& state, double g_value, TieBreaker& tie) {
  require_swept(state);
  return argmax(
      state.size(), [&](std::size_t i) { return gism_index(state.mean(i), g_value, state.counts[i]); }, tie);
}

std::size_t gism_step(const PolicyState& state, const GFunction& g, TieBreaker& tie) {
  return gism_step_with_value(state, eval_g(g, state.t), tie);
}

std::size_t round_robin_step(const PolicyState& state) {
  return static_cast<std::size_t>(state.t % static_cast<std::int64_t>(state.size()));
}

std::size_t greedy_step(const PolicyState& state, TieBreaker& tie) {
  require_swept(state);
  return argmax(state.size(), [&](std::size_t i) { return state.mean(i); }, tie);
}

std::size_t policy_step(PolicyKind kind, const PolicyState& state, const GFunction& g, TieBreaker& tie) {
  switch (kind) {
    case PolicyKind::kGForcing: return gforcing_step(state, g, tie);
    case PolicyKind::kGIsm: return gism_step(state, g, tie);
    case PolicyKind::kRoundRobin: return round_robin_step(state);
    case PolicyKind::kGreedy: return greedy_step(state, tie);
  }
  return 0;
}

}  // namespace gforce
