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

#include "gforce/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gforce {

std::vector<std::int64_t> default_checkpoints(std::size_t arms, std::int64_t horizon, int points) {
  const auto k = static_cast<std::int64_t>(arms);
  std::vector<std::int64_t> grid;
  if (horizon < k) return grid;
  if (points < 2 || horizon == k) return {horizon};
  const double lo = std::log(static_cast<double>(k));
  const double hi = std::log(static_cast<double>(horizon));
  for (int j = 0; j < points; ++j) {
    auto n = static_cast<std::int64_t>(std::llround(std::exp(lo + (hi - lo) * j / (points - 1))));
    n = std::clamp(n, k, horizon);
    if (grid.empty() || n > grid.back()) grid.push_back(n);
  }
  if (grid.back() != horizon) grid.push_back(horizon);
  return grid;
}

std::vector<std::int64_t> resolved_checkpoints(const RunConfig& config) {
  const auto k = static_cast<std::int64_t>(config.instance.size());
  if (config.checkpoints.empty()) return default_checkpoints(config.instance.size(), config.horizon);
  const auto& cp = config.checkpoints;
  for (std::size_t j = 0; j < cp.size(); ++j) {
    if (cp[j] < k || cp[j] > config.horizon) throw ConfigError("checkpoint outside [K, horizon]");
    if (j > 0 && cp[j] <= cp[j - 1]) throw ConfigError("checkpoints must be strictly increasing");
  }
  if (cp.back() != config.horizon) throw ConfigError("last checkpoint must equal the horizon");
  return cp;
}

void validate(const RunConfig& config) {
  const auto k = static_cast<std::int64_t>(config.instance.size());
  if (config.horizon < k) {
    throw ConfigError("horizon " + std::to_string(config.horizon) + " < K = " + std::to_string(k));
  }
  resolved_checkpoints(config);
  if (uses_g(config.policy)) {
    const auto report = validate_g(config.g);
    if (!report.passed()) {
      std::string names;
      for (const auto& f : report.failures()) names += (names.empty() ? "" : ", ") + f;
      throw ConfigError("inadmissible g " + config.g.describe() + ": fails " + names);
    }
  }
}

std::string canonical_form(const RunConfig& config) {
  std::ostringstream os;
  os << "arms=";
  for (std::size_t i = 0; i < config.instance.size(); ++i) {
    os << (i ? ";" : "") << config.instance.arm(i).describe();
  }
  os << "|policy=" << to_string(config.policy);
  if (uses_g(config.policy)) os << "|g=" << config.g.describe();
  os << "|tie=" << to_string(config.tie) << "|horizon=" << config.horizon << "|seed=" << config.seed;
  os << "|checkpoints=";
  const auto cp = config.checkpoints.empty()
                      ? default_checkpoints(config.instance.size(), config.horizon)
                      : config.checkpoints;
  for (std::size_t j = 0; j < cp.size(); ++j) os << (j ? "," : "") << cp[j];
  return os.str();
}

std::uint64_t config_digest(const RunConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_form(config)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

bool keeps_decisions(const RunConfig& config) {
  return config.record_decisions.value_or(config.horizon <= kDecisionLogLimit);
}

}  // namespace

Trajectory run(const RunConfig& config) {
  validate(config);
  const auto grid = resolved_checkpoints(config);
  const std::size_t k = config.instance.size();
  const bool log_decisions = keeps_decisions(config);

  Trajectory traj{config, config_digest(config), {}, {}};
  traj.records.reserve(grid.size());
  if (log_decisions) traj.decisions.reserve(static_cast<std::size_t>(config.horizon));

  std::vector<RewardStream> streams;
  streams.reserve(k);
  for (std::size_t i = 0; i < k; ++i) streams.emplace_back(config.instance.arm(i), config.seed, i);
  TieBreaker tie(config.tie, config.seed);
  PolicyState state(k);
  const GFunction* forcing_g = config.policy == PolicyKind::kGForcing ? &config.g : nullptr;

  double total_reward = 0.0;
  std::size_t next_cp = 0;
  for (std::int64_t t = 0; t < config.horizon; ++t) {
    const std::size_t arm = t < static_cast<std::int64_t>(k)
                                ? static_cast<std::size_t>(t)
                                : policy_step(config.policy, state, config.g, tie);
    const double reward = streams[arm].next();
    total_reward += reward;
    update(state, arm, reward, forcing_g);
    if (log_decisions) traj.decisions.push_back(static_cast<std::uint32_t>(arm));

    if (next_cp < grid.size() && state.t == grid[next_cp]) {
      CheckpointRecord rec;
      rec.n = state.t;
      rec.counts = state.counts;
      rec.pseudo_regret = pseudo_regret(config.instance, state.counts);
      rec.sample_regret = sample_regret(config.instance, total_reward, state.t);
      rec.means.resize(k);
      for (std::size_t i = 0; i < k; ++i) rec.means[i] = state.mean(i);
      traj.records.push_back(std::move(rec));
      ++next_cp;
    }
  }
  return traj;
}

Trajectory run_reference(const RunConfig& config) {
  if (config.horizon > kReferenceHorizonLimit) {
    throw ConfigError("run_reference: horizon " + std::to_string(config.horizon) + " exceeds " +
                      std::to_string(kReferenceHorizonLimit));
  }
  validate(config);
  const auto grid = resolved_checkpoints(config);
  const std::size_t k = config.instance.size();
  const auto& deltas = config.instance.deltas();

  std::vector<RewardStream> streams;
  for (std::size_t i = 0; i < k; ++i) streams.emplace_back(config.instance.arm(i), config.seed, i);
  TieBreaker tie(config.tie, config.seed);

  std::vector<std::vector<double>> history(k);  // rewards per arm, in draw order
  std::vector<double> all_rewards;              // rewards in time order
  std::vector<std::uint32_t> decisions;

  auto arm_sum = [&](std::size_t i) {
    double s = 0.0;
    for (double r : history[i]) s += r;
    return s;
  };
  auto count = [&](std::size_t i) { return static_cast<std::int64_t>(history[i].size()); };
  auto best_of = [&](const std::vector<double>& score) {
    double best = score[0];
    for (std::size_t i = 1; i < k; ++i) {
      if (score[i] > best) best = score[i];
    }
    std::vector<std::size_t> cands;
    for (std::size_t i = 0; i < k; ++i) {
      if (score[i] == best) cands.push_back(i);
    }
    return tie.pick(cands);
  };

  Trajectory traj{config, config_digest(config), {}, {}};
  std::size_t next_cp = 0;
  for (std::int64_t t = 0; t < config.horizon; ++t) {
    std::size_t arm = 0;
    if (t < static_cast<std::int64_t>(k)) {
      arm = static_cast<std::size_t>(t);
    } else {
      std::vector<double> mean(k);
      for (std::size_t i = 0; i < k; ++i) mean[i] = arm_sum(i) / static_cast<double>(count(i));
      const double gt = config.g.value(static_cast<double>(t));
      switch (config.policy) {
        case PolicyKind::kRoundRobin:
          arm = static_cast<std::size_t>(t % static_cast<std::int64_t>(k));
          break;
        case PolicyKind::kGreedy:
          arm = best_of(mean);
          break;
        case PolicyKind::kGForcing: {
          std::int64_t lo = count(0);
          for (std::size_t i = 1; i < k; ++i) lo = std::min(lo, count(i));
          if (static_cast<double>(lo) >= gt) {
            arm = best_of(mean);
          } else {
            std::vector<std::size_t> cands;
            for (std::size_t i = 0; i < k; ++i) {
              if (count(i) == lo) cands.push_back(i);
            }
            arm = tie.pick(cands);
          }
          break;
        }
        case PolicyKind::kGIsm: {
          std::vector<double> index(k);
          for (std::size_t i = 0; i < k; ++i) index[i] = mean[i] + gt / static_cast<double>(count(i));
          arm = best_of(index);
          break;
        }
      }
    }
    const double reward = streams[arm].next();
    history[arm].push_back(reward);
    all_rewards.push_back(reward);
    decisions.push_back(static_cast<std::uint32_t>(arm));

    const std::int64_t n = t + 1;
    if (next_cp < grid.size() && n == grid[next_cp]) {
      CheckpointRecord rec;
      rec.n = n;
      double pr = 0.0;
      double total = 0.0;
      for (double r : all_rewards) total += r;
      for (std::size_t i = 0; i < k; ++i) {
        rec.counts.push_back(count(i));
        pr += deltas[i] * static_cast<double>(count(i));
        rec.means.push_back(arm_sum(i) / static_cast<double>(count(i)));
      }
      rec.pseudo_regret = pr;
      rec.sample_regret = static_cast<double>(n) * config.instance.mu_star() - total;
      traj.records.push_back(std::move(rec));
      ++next_cp;
    }
  }
  if (keeps_decisions(config)) traj.decisions = std::move(decisions);
  return traj;
}

namespace {

SweepResult run_one(const RunConfig& config) {
  SweepResult out;
  try {
    out.digest = config_digest(config);
    out.trajectory = run(config);
  } catch (const std::exception& e) {
    out.trajectory.reset();
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::vector<SweepResult> sweep(std::span<const RunConfig> configs, int parallelism) {
  std::vector<SweepResult> results(configs.size());
  const auto n = static_cast<std::int64_t>(configs.size());
  const int threads = std::max(1, parallelism);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t j = 0; j < n; ++j) {
    results[static_cast<std::size_t>(j)] = run_one(configs[static_cast<std::size_t>(j)]);
  }
  return results;
}

std::vector<SweepResult> sweep_serial(std::span<const RunConfig> configs) {
  std::vector<SweepResult> results;
  results.reserve(configs.size());
  for (const auto& c : configs) results.push_back(run_one(c));
  return results;
}

}  // namespace gforce
