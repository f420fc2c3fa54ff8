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
#include <string>
#include <string_view>
#include <vector>

namespace gforce {

/// Reward distribution of a single arm. Means and variances are closed form;
/// for ar1 they are the stationary values.
class ArmSpec {
 public:
  enum class Family { kBernoulli, kGaussian, kUniform, kPointMass, kAr1 };

  static ArmSpec bernoulli(double p);
  static ArmSpec gaussian(double mean, double stddev);
  static ArmSpec uniform(double lo, double hi);
  static ArmSpec point_mass(double value);
  /// X_k = mean + rho (X_{k-1} - mean) + N(0, innovation^2), X_0 = mean.
  static ArmSpec ar1(double mean, double rho, double innovation);

  Family family() const { return family_; }
  const std::vector<double>& params() const { return params_; }

  double mean() const;
  double variance() const;
  double stddev() const;

  /// e.g. "bernoulli(0.9)", "gaussian(1,0.5)". parse_arm() accepts the same form.
  std::string describe() const;

  friend bool operator==(const ArmSpec&, const ArmSpec&) = default;

 private:
  ArmSpec(Family family, std::vector<double> params);

  Family family_;
  std::vector<double> params_;
};

std::string_view to_string(ArmSpec::Family family);

/// Parses "family(p1,p2,...)"; throws std::invalid_argument on malformed input.
ArmSpec parse_arm(std::string_view text);

/// K >= 2 arms and the derived gap quantities.
class BanditInstance {
 public:
  explicit BanditInstance(std::vector<ArmSpec> arms);

  std::size_t size() const { return arms_.size(); }
  const std::vector<ArmSpec>& arms() const { return arms_; }
  const ArmSpec& arm(std::size_t i) const { return arms_[i]; }

  double mu_star() const { return mu_star_; }
  const std::vector<std::size_t>& optimal_set() const { return optimal_; }
  std::size_t k_star() const { return optimal_.size(); }
  bool is_optimal(std::size_t i) const { return deltas_[i] == 0.0; }
  const std::vector<double>& deltas() const { return deltas_; }
  double delta(std::size_t i) const { return deltas_[i]; }
  /// Sum of gaps over sub-optimal arms.
  double s_delta() const { return s_delta_; }
  /// Sum of reciprocal gaps over sub-optimal arms.
  double p_delta() const { return p_delta_; }

  friend bool operator==(const BanditInstance& a, const BanditInstance& b) { return a.arms_ == b.arms_; }

 private:
  std::vector<ArmSpec> arms_;
  double mu_star_ = 0.0;
  std::vector<std::size_t> optimal_;
  std::vector<double> deltas_;
  double s_delta_ = 0.0;
  double p_delta_ = 0.0;
};

/// SplitMix64 finalizer; used to derive independent substream seeds.
std::uint64_t mix64(std::uint64_t x);
/// Seed for arm `arm` of a run seeded with `seed`.
std::uint64_t arm_stream_seed(std::uint64_t seed, std::size_t arm);
/// Seed for a run's tie-break substream (disjoint from every arm stream).
std::uint64_t tie_stream_seed(std::uint64_t seed);

/// Deterministic reward source for one arm. Copying a stream snapshots it;
/// the copy replays the identical sequence.
class RewardStream {
 public:
  RewardStream(ArmSpec arm, std::uint64_t run_seed, std::size_t arm_index);

  double next();
  const ArmSpec& arm() const { return arm_; }
  std::uint64_t draws() const { return draws_; }

 private:
  ArmSpec arm_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  double ar1_last_ = 0.0;
  std::uint64_t draws_ = 0;
};

/// One reward from `stream`, advancing it.
inline double sample_reward(RewardStream& stream) { return stream.next(); }

/// Sum of gap_i * T_i. Throws std::invalid_argument on a length mismatch.
double pseudo_regret(const BanditInstance& instance, std::span<const std::int64_t> counts);

/// n * mu_star - total_reward; negative when draws beat the best mean.
double sample_regret(const BanditInstance& instance, double total_reward, std::int64_t n);

}  // namespace gforce
