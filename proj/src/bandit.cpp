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

#include "gforce/bandit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gforce/format.hpp"

namespace gforce {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

ArmSpec::ArmSpec(Family family, std::vector<double> params)
    : family_(family), params_(std::move(params)) {
  for (double p : params_) require(finite(p), "arm: parameters must be finite");
}

ArmSpec ArmSpec::bernoulli(double p) {
  require(p >= 0.0 && p <= 1.0, "arm: bernoulli p must lie in [0,1]");
  return ArmSpec(Family::kBernoulli, {p});
}

ArmSpec ArmSpec::gaussian(double mean, double stddev) {
  require(stddev > 0.0, "arm: gaussian sigma must be positive");
  return ArmSpec(Family::kGaussian, {mean, stddev});
}

ArmSpec ArmSpec::uniform(double lo, double hi) {
  require(lo < hi, "arm: uniform needs a < b");
  return ArmSpec(Family::kUniform, {lo, hi});
}

ArmSpec ArmSpec::point_mass(double value) { return ArmSpec(Family::kPointMass, {value}); }

ArmSpec ArmSpec::ar1(double mean, double rho, double innovation) {
  require(rho >= 0.0 && rho < 1.0, "arm: ar1 rho must lie in [0,1)");
  require(innovation > 0.0, "arm: ar1 innovation sigma must be positive");
  return ArmSpec(Family::kAr1, {mean, rho, innovation});
}

double ArmSpec::mean() const {
  switch (family_) {
    case Family::kBernoulli: return params_[0];
    case Family::kGaussian: return params_[0];
    case Family::kUniform: return 0.5 * (params_[0] + params_[1]);
    case Family::kPointMass: return params_[0];
    case Family::kAr1: return params_[0];
  }
  return 0.0;
}

double ArmSpec::variance() const {
  switch (family_) {
    case Family::kBernoulli: return params_[0] * (1.0 - params_[0]);
    case Family::kGaussian: return params_[1] * params_[1];
    case Family::kUniform: {
      const double w = params_[1] - params_[0];
      return w * w / 12.0;
    }
    case Family::kPointMass: return 0.0;
    case Family::kAr1: {
      const double rho = params_[1];
      return params_[2] * params_[2] / (1.0 - rho * rho);
    }
  }
  return 0.0;
}

double ArmSpec::stddev() const { return std::sqrt(variance()); }

std::string ArmSpec::describe() const {
  std::ostringstream os;
  os << to_string(family_) << "(";
  for (std::size_t k = 0; k < params_.size(); ++k) os << (k ? "," : "") << format_double(params_[k]);
  os << ")";
  return os.str();
}

std::string_view to_string(ArmSpec::Family family) {
  switch (family) {
    case ArmSpec::Family::kBernoulli: return "bernoulli";
    case ArmSpec::Family::kGaussian: return "gaussian";
    case ArmSpec::Family::kUniform: return "uniform";
    case ArmSpec::Family::kPointMass: return "point-mass";
    case ArmSpec::Family::kAr1: return "ar1";
  }
  return "?";
}

ArmSpec parse_arm(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  const auto open = text.find('(');
  require(open != std::string_view::npos && text.back() == ')',
          "arm: expected family(params), got '" + std::string(text) + "'");
  const auto family = trim(text.substr(0, open));
  auto body = text.substr(open + 1, text.size() - open - 2);

  std::vector<double> p;
  while (true) {
    const auto comma = body.find(',');
    const auto tok = trim(body.substr(0, comma));
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    require(ec == std::errc() && ptr == tok.data() + tok.size() && !tok.empty(),
            "arm: bad number '" + std::string(tok) + "'");
    p.push_back(v);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }

  auto arity = [&](std::size_t n) {
    require(p.size() == n, "arm: " + std::string(family) + " takes " + std::to_string(n) + " parameter(s)");
  };
  if (family == "bernoulli") { arity(1); return ArmSpec::bernoulli(p[0]); }
  if (family == "gaussian") { arity(2); return ArmSpec::gaussian(p[0], p[1]); }
  if (family == "uniform") { arity(2); return ArmSpec::uniform(p[0], p[1]); }
  if (family == "point-mass") { arity(1); return ArmSpec::point_mass(p[0]); }
  if (family == "ar1") { arity(3); return ArmSpec::ar1(p[0], p[1], p[2]); }
  throw std::invalid_argument("arm: unknown family '" + std::string(family) + "'");
}

BanditInstance::BanditInstance(std::vector<ArmSpec> arms) : arms_(std::move(arms)) {
  require(arms_.size() >= 2, "instance: need at least two arms");
  mu_star_ = arms_[0].mean();
  for (const auto& a : arms_) mu_star_ = std::max(mu_star_, a.mean());
  deltas_.reserve(arms_.size());
  for (std::size_t i = 0; i < arms_.size(); ++i) {
    const double d = mu_star_ - arms_[i].mean();
    deltas_.push_back(d);
    if (d == 0.0) {
      optimal_.push_back(i);
    } else {
      s_delta_ += d;
      p_delta_ += 1.0 / d;
    }
  }
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t arm_stream_seed(std::uint64_t seed, std::size_t arm) {
  return mix64(mix64(seed) ^ mix64(0x100000000ULL + arm));
}

std::uint64_t tie_stream_seed(std::uint64_t seed) {
  return mix64(mix64(seed) ^ mix64(0x7469652d627265ULL));
}

RewardStream::RewardStream(ArmSpec arm, std::uint64_t run_seed, std::size_t arm_index)
    : arm_(std::move(arm)), engine_(arm_stream_seed(run_seed, arm_index)) {
  if (arm_.family() == ArmSpec::Family::kAr1) ar1_last_ = arm_.params()[0];
}

double RewardStream::next() {
  ++draws_;
  const auto& p = arm_.params();
  switch (arm_.family()) {
    case ArmSpec::Family::kBernoulli: return unit_(engine_) < p[0] ? 1.0 : 0.0;
    case ArmSpec::Family::kGaussian: return p[0] + p[1] * normal_(engine_);
    case ArmSpec::Family::kUniform: return p[0] + (p[1] - p[0]) * unit_(engine_);
    case ArmSpec::Family::kPointMass: return p[0];
    case ArmSpec::Family::kAr1:
      ar1_last_ = p[0] + p[1] * (ar1_last_ - p[0]) + p[2] * normal_(engine_);
      return ar1_last_;
  }
  return 0.0;
}

double pseudo_regret(const BanditInstance& instance, std::span<const std::int64_t> counts) {
  if (counts.size() != instance.size()) {
    throw std::invalid_argument("pseudo_regret: counts length " + std::to_string(counts.size()) +
                                " != K = " + std::to_string(instance.size()));
  }
  double r = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) r += instance.delta(i) * static_cast<double>(counts[i]);
  return r;
}

double sample_regret(const BanditInstance& instance, double total_reward, std::int64_t n) {
  return static_cast<double>(n) * instance.mu_star() - total_reward;
}

}  // namespace gforce
