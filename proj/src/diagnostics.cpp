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

#include "gforce/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gforce {

TheoremBounds TheoremBounds::of(const BanditInstance& instance) {
  TheoremBounds b;
  b.s_delta = instance.s_delta();
  b.k_minus_one = static_cast<std::int64_t>(instance.size()) - 1;
  double spread = 0.0;
  b.per_arm_limit.assign(instance.size(), 0.0);
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (instance.is_optimal(i)) continue;
    spread += instance.arm(i).stddev() / std::sqrt(instance.delta(i));
    b.per_arm_limit[i] = 1.0 / instance.delta(i);
  }
  b.upper_remainder_coeff = 2.0 * std::numbers::sqrt2 * spread;
  b.lower_remainder_coeff = -3.0 * std::numbers::sqrt2 * spread;
  return b;
}

std::string_view to_string(SeriesLabel label) {
  switch (label) {
    case SeriesLabel::kRegretOverG: return "regret-over-g";
    case SeriesLabel::kForcingRemainder: return "forcing-remainder";
    case SeriesLabel::kIsmRemainderNormalized: return "ism-remainder-normalized";
    case SeriesLabel::kPerArmCountOverG: return "per-arm-count-over-g";
    case SeriesLabel::kOptimalShareRatio: return "optimal-share-ratio";
  }
  return "?";
}

namespace {

DiagnosticSeries blank(SeriesLabel label, const Trajectory& traj) {
  DiagnosticSeries s;
  s.label = label;
  s.n.reserve(traj.records.size());
  for (const auto& r : traj.records) s.n.push_back(r.n);
  s.values.assign(s.n.size(), 0.0);
  s.skipped.assign(s.n.size(), false);
  return s;
}

}  // namespace

DiagnosticSeries regret_ratio(const Trajectory& traj, const GFunction& g) {
  auto s = blank(SeriesLabel::kRegretOverG, traj);
  for (std::size_t j = 0; j < s.size(); ++j) s.values[j] = traj.records[j].pseudo_regret / eval_g(g, s.n[j]);
  return s;
}

DiagnosticSeries forcing_remainder(const Trajectory& traj, const TheoremBounds& bounds, const GFunction& g) {
  auto s = blank(SeriesLabel::kForcingRemainder, traj);
  for (std::size_t j = 0; j < s.size(); ++j) {
    s.values[j] = traj.records[j].pseudo_regret - bounds.s_delta * eval_g(g, s.n[j]);
  }
  return s;
}

SandwichVerdict check_forcing_sandwich(const Trajectory& traj, const GFunction& g, double delta,
                                       double burn_in_fraction) {
  if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("check_forcing_sandwich: delta must lie in (0, 0.5)");
  if (!(burn_in_fraction >= 0.0 && burn_in_fraction <= 1.0)) {
    throw std::invalid_argument("check_forcing_sandwich: burn-in fraction must lie in [0, 1]");
  }
  const auto& inst = traj.config.instance;
  const double burn_in = burn_in_fraction * static_cast<double>(traj.config.horizon);

  SandwichVerdict v;
  v.checkpoint_passed.assign(traj.records.size(), true);
  for (std::size_t j = 0; j < traj.records.size(); ++j) {
    const auto& rec = traj.records[j];
    if (static_cast<double>(rec.n) < burn_in) continue;
    const double gn = eval_g(g, rec.n);
    const double lower = gn - 2.0 * delta;
    const double upper = std::ceil(gn);
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (inst.is_optimal(i)) continue;
      ++v.checked;
      const auto c = static_cast<double>(rec.counts[i]);
      if (c < lower || c > upper) {
        v.passed = false;
        v.checkpoint_passed[j] = false;
        v.violations.push_back({rec.n, i, rec.counts[i], lower, upper});
      }
    }
  }
  return v;
}

std::vector<DiagnosticSeries> ism_count_ratio(const Trajectory& traj, const TheoremBounds& /*bounds*/,
                                              const GFunction& g) {
  const auto& inst = traj.config.instance;
  std::vector<DiagnosticSeries> out;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (inst.is_optimal(i)) continue;
    auto s = blank(SeriesLabel::kPerArmCountOverG, traj);
    s.arm = i;
    s.flagged = inst.k_star() > 1;
    for (std::size_t j = 0; j < s.size(); ++j) {
      s.values[j] = inst.delta(i) * static_cast<double>(traj.records[j].counts[i]) / eval_g(g, s.n[j]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

DiagnosticSeries ism_remainder_normalized(const Trajectory& traj, const TheoremBounds& bounds,
                                          const GFunction& g) {
  auto s = blank(SeriesLabel::kIsmRemainderNormalized, traj);
  s.flagged = traj.config.instance.k_star() > 1;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double gn = eval_g(g, s.n[j]);
    if (!(gn > std::numbers::e)) {
      s.skipped[j] = true;
      s.values[j] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const double excess = traj.records[j].pseudo_regret - static_cast<double>(bounds.k_minus_one) * gn;
    s.values[j] = excess / std::sqrt(gn * std::log(std::log(gn)));
  }
  return s;
}

DiagnosticSeries optimal_share_ratio(const Trajectory& traj, const BanditInstance& instance) {
  if (instance.k_star() < 2) throw std::invalid_argument("optimal_share_ratio: needs at least two optimal arms");
  auto s = blank(SeriesLabel::kOptimalShareRatio, traj);
  for (std::size_t j = 0; j < s.size(); ++j) {
    const auto& counts = traj.records[j].counts;
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = 0;
    for (std::size_t i : instance.optimal_set()) {
      lo = std::min(lo, counts[i]);
      hi = std::max(hi, counts[i]);
    }
    s.values[j] = static_cast<double>(lo) / static_cast<double>(hi);
  }
  return s;
}

TailSummary tail_estimate(const DiagnosticSeries& series, double tail_fraction) {
  if (series.values.empty()) throw std::invalid_argument("tail_estimate: empty series");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw std::invalid_argument("tail_estimate: tail fraction must lie in (0, 1]");
  }
  const std::size_t len = series.values.size();
  const auto take = std::min(len, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(len))));
  TailSummary out;
  out.min = std::numeric_limits<double>::infinity();
  out.max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::size_t j = len - take; j < len; ++j) {
    if (!series.skipped.empty() && series.skipped[j]) continue;
    const double v = series.values[j];
    sum += v;
    out.min = std::min(out.min, v);
    out.max = std::max(out.max, v);
    ++out.points;
  }
  if (out.points == 0) throw std::invalid_argument("tail_estimate: every tail entry is skipped");
  out.mean = sum / static_cast<double>(out.points);
  return out;
}

}  // namespace gforce
