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

#include <bit>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "gforce/engine.hpp"

namespace gforce {
namespace {

BanditInstance point_masses(std::vector<double> values) {
  std::vector<ArmSpec> arms;
  for (double v : values) arms.push_back(ArmSpec::point_mass(v));
  return BanditInstance(std::move(arms));
}

BanditInstance bern3() {
  return BanditInstance({ArmSpec::bernoulli(0.9), ArmSpec::bernoulli(0.6), ArmSpec::bernoulli(0.5)});
}

RunConfig make(BanditInstance inst, PolicyKind kind, std::int64_t horizon, std::uint64_t seed = 0) {
  RunConfig c{std::move(inst)};
  c.policy = kind;
  c.g = GFunction::power(0.5);
  c.horizon = horizon;
  c.seed = seed;
  return c;
}

bool bit_equal(const Trajectory& a, const Trajectory& b) {
  if (a.decisions != b.decisions || a.records.size() != b.records.size() || a.digest != b.digest) return false;
  auto same = [](double x, double y) { return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y); };
  for (std::size_t j = 0; j < a.records.size(); ++j) {
    const auto& x = a.records[j];
    const auto& y = b.records[j];
    if (x.n != y.n || x.counts != y.counts || !same(x.pseudo_regret, y.pseudo_regret) ||
        !same(x.sample_regret, y.sample_regret)) {
      return false;
    }
    for (std::size_t i = 0; i < x.means.size(); ++i) {
      if (!same(x.means[i], y.means[i])) return false;
    }
  }
  return true;
}

TEST(Run, RoundRobinPointMass) {
  auto c = make(point_masses({1.0, 0.0}), PolicyKind::kRoundRobin, 100);
  EXPECT_DOUBLE_EQ(run(c).final_record().pseudo_regret, 50.0);
}

TEST(Run, GreedyPointMass) {
  auto c = make(point_masses({1.0, 0.0}), PolicyKind::kGreedy, 100);
  EXPECT_DOUBLE_EQ(run(c).final_record().pseudo_regret, 1.0);
}

TEST(Run, ForcingDeterministicRegret) {
  auto c = make(point_masses({1.0, 0.5, 0.0}), PolicyKind::kGForcing, 100'000);
  c.g = GFunction::log();
  EXPECT_DOUBLE_EQ(run(c).final_record().pseudo_regret, 18.0);
}

TEST(Run, RejectsInvalidConfigs) {
  auto c = make(bern3(), PolicyKind::kGForcing, 2);
  EXPECT_THROW(run(c), ConfigError);
  c.horizon = 100;
  c.g = GFunction::power(1.0);
  EXPECT_THROW(run(c), ConfigError);
  c.policy = PolicyKind::kRoundRobin;
  EXPECT_NO_THROW(run(c));
  c.policy = PolicyKind::kGForcing;
  c.g = GFunction::log();
  c.checkpoints = {10, 5, 100};
  EXPECT_THROW(run(c), ConfigError);
}

TEST(Run, DecisionLogLimit) {
  auto c = make(bern3(), PolicyKind::kGIsm, 1000);
  EXPECT_EQ(run(c).decisions.size(), 1000u);
  c.record_decisions = false;
  EXPECT_TRUE(run(c).decisions.empty());
}

TEST(RunReference, HorizonLimit) {
  auto c = make(bern3(), PolicyKind::kGIsm, kReferenceHorizonLimit + 1);
  c.record_decisions = false;
  EXPECT_THROW(run_reference(c), ConfigError);
}

TEST(RunReference, MatchesRunForAllPolicies) {
  const std::vector<BanditInstance> instances{
      bern3(), BanditInstance({ArmSpec::gaussian(1, 0.5), ArmSpec::gaussian(0.6, 0.5)}),
      BanditInstance({ArmSpec::gaussian(1, 0.5), ArmSpec::gaussian(1, 0.5), ArmSpec::gaussian(0.5, 0.5)}),
      BanditInstance({ArmSpec::ar1(0.9, 0.5, 0.5), ArmSpec::ar1(0.6, 0.5, 0.5)})};
  for (const auto& inst : instances) {
    for (auto kind : {PolicyKind::kGForcing, PolicyKind::kGIsm, PolicyKind::kRoundRobin, PolicyKind::kGreedy}) {
      for (auto tie : {TieRule::kLowestIndex, TieRule::kSeededUniform}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
          auto c = make(inst, kind, 3000, seed);
          c.tie = tie;
          ASSERT_TRUE(bit_equal(run(c), run_reference(c))) << canonical_form(c);
        }
      }
    }
  }
}

TEST(Sweep, ParallelMatchesSerial) {
  std::vector<RunConfig> configs;
  for (std::uint64_t s = 0; s < 12; ++s) {
    configs.push_back(make(bern3(), s % 2 ? PolicyKind::kGIsm : PolicyKind::kGForcing, 5000, s));
  }
  const auto a = sweep(configs, 1);
  const auto b = sweep(configs, 8);
  const auto c = sweep_serial(configs);
  ASSERT_EQ(a.size(), configs.size());
  for (std::size_t j = 0; j < configs.size(); ++j) {
    ASSERT_TRUE(a[j].ok() && b[j].ok() && c[j].ok());
    EXPECT_TRUE(bit_equal(*a[j].trajectory, *b[j].trajectory));
    EXPECT_TRUE(bit_equal(*a[j].trajectory, *c[j].trajectory));
  }
}

TEST(Sweep, DistinctDigestsAcrossSeeds) {
  std::vector<RunConfig> configs;
  for (std::uint64_t s = 0; s < 32; ++s) configs.push_back(make(bern3(), PolicyKind::kGForcing, 200, s));
  std::set<std::uint64_t> digests;
  for (const auto& r : sweep(configs, 4)) digests.insert(r.digest);
  EXPECT_EQ(digests.size(), 32u);
}

TEST(Sweep, EmptyListGivesEmptyResult) { EXPECT_TRUE(sweep({}, 4).empty()); }

TEST(Sweep, ErrorsStayPerConfig) {
  std::vector<RunConfig> configs{make(bern3(), PolicyKind::kGForcing, 100), make(bern3(), PolicyKind::kGForcing, 1)};
  const auto r = sweep(configs, 2);
  EXPECT_TRUE(r[0].ok());
  EXPECT_FALSE(r[1].ok());
  EXPECT_FALSE(r[1].error.empty());
}

TEST(Checkpoints, DefaultGridIsLogSpacedAndEndsAtHorizon) {
  const auto grid = default_checkpoints(3, 1'000'000);
  ASSERT_GE(grid.size(), 2u);
  EXPECT_GE(grid.front(), 3);
  EXPECT_EQ(grid.back(), 1'000'000);
  for (std::size_t j = 1; j < grid.size(); ++j) EXPECT_LT(grid[j - 1], grid[j]);
}

TEST(Digest, TracksEveryRelevantField) {
  const auto base = make(bern3(), PolicyKind::kGForcing, 1000);
  auto other = base;
  other.seed = 1;
  EXPECT_NE(config_digest(base), config_digest(other));
  other = base;
  other.horizon = 1001;
  EXPECT_NE(config_digest(base), config_digest(other));
  other = base;
  other.g = GFunction::log();
  EXPECT_NE(config_digest(base), config_digest(other));
  auto rr = make(bern3(), PolicyKind::kRoundRobin, 1000);
  auto rr2 = rr;
  rr2.g = GFunction::log();
  EXPECT_EQ(config_digest(rr), config_digest(rr2));
}

// Properties.

TEST(EngineProperty, Deterministic) {
  const auto c = make(bern3(), PolicyKind::kGIsm, 20'000, 3);
  EXPECT_TRUE(bit_equal(run(c), run(c)));
}

TEST(EngineProperty, CountConservationAndConsistency) {
  for (auto kind : {PolicyKind::kGForcing, PolicyKind::kGIsm, PolicyKind::kRoundRobin, PolicyKind::kGreedy}) {
    const auto c = make(bern3(), kind, 50'000, 9);
    const auto traj = run(c);
    for (const auto& r : traj.records) {
      std::int64_t total = 0;
      for (auto t : r.counts) total += t;
      EXPECT_EQ(total, r.n);
      EXPECT_EQ(std::bit_cast<std::uint64_t>(r.pseudo_regret),
                std::bit_cast<std::uint64_t>(pseudo_regret(c.instance, r.counts)));
    }
  }
}

TEST(EngineProperty, SeedIsolation) {
  const auto a = run(make(bern3(), PolicyKind::kGIsm, 10'000, 1));
  const auto b = run(make(bern3(), PolicyKind::kGIsm, 10'000, 2));
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t j = 0; j < a.records.size(); ++j) {
    EXPECT_EQ(a.records[j].n, b.records[j].n);
    EXPECT_EQ(a.records[j].counts.size(), b.records[j].counts.size());
  }
  EXPECT_NE(a.final_record().sample_regret, b.final_record().sample_regret);
}

}  // namespace
}  // namespace gforce
