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

#include "gforce/g_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gforce/format.hpp"

namespace gforce {

const double GFunction::kDefaultLnLnShift = std::exp(std::exp(1.0));

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

GFunction::GFunction(Kind kind, double scale, double shift, double exponent,
                     std::vector<Knot> knots)
    : kind_(kind), scale_(scale), shift_(shift), exponent_(exponent), knots_(std::move(knots)) {
  require(std::isfinite(scale_) && scale_ > 0.0, "g: scale must be positive and finite");
  require(std::isfinite(shift_) && shift_ >= 0.0, "g: shift must be non-negative and finite");
}

GFunction GFunction::log(double scale, double shift) {
  require(shift > 0.0, "g: log needs shift > 0 so that g(1) > 0");
  return GFunction(Kind::kLog, scale, shift, 0.0, {});
}

GFunction GFunction::iterated_log(double scale, double shift) {
  require(shift > std::exp(1.0) - 1.0, "g: iterated-log needs 1 + shift > e so that g(1) > 0");
  return GFunction(Kind::kIteratedLog, scale, shift, 0.0, {});
}

GFunction GFunction::power(double exponent, double scale, double shift) {
  require(std::isfinite(exponent) && exponent > 0.0, "g: power exponent must be positive");
  return GFunction(Kind::kPower, scale, shift, exponent, {});
}

GFunction GFunction::sqrt_lnln(double scale, double shift) {
  require(shift > std::exp(1.0) - 1.0, "g: sqrt-lnln needs 1 + shift > e so that g(1) > 0");
  return GFunction(Kind::kSqrtLnLn, scale, shift, 0.0, {});
}

GFunction GFunction::custom_table(std::vector<Knot> knots, double scale) {
  require(knots.size() >= 2, "g: custom table needs at least two knots");
  for (std::size_t k = 0; k < knots.size(); ++k) {
    require(std::isfinite(knots[k].t) && knots[k].t > 0.0, "g: table knots need t > 0");
    require(std::isfinite(knots[k].value), "g: table values must be finite");
    if (k > 0) require(knots[k].t > knots[k - 1].t, "g: table knots must be strictly increasing in t");
  }
  return GFunction(Kind::kCustomTable, scale, 0.0, 0.0, std::move(knots));
}

GFunction GFunction::with_defaults(Kind kind) {
  switch (kind) {
    case Kind::kLog: return log();
    case Kind::kIteratedLog: return iterated_log();
    case Kind::kPower: return power();
    case Kind::kSqrtLnLn: return sqrt_lnln();
    case Kind::kCustomTable: break;
  }
  throw std::invalid_argument("g: custom-table has no default parameters");
}

std::size_t GFunction::segment(double t) const {
  // Segment k spans [knots[k].t, knots[k+1].t]; the outer ones extend to 0 and infinity.
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                             [](double x, const Knot& k) { return x < k.t; });
  auto idx = static_cast<std::size_t>(it - knots_.begin());
  if (idx == 0) return 0;
  return std::min(idx - 1, knots_.size() - 2);
}

double GFunction::value(double t) const {
  const double x = t + shift_;
  switch (kind_) {
    case Kind::kLog: return scale_ * std::log(x);
    case Kind::kIteratedLog: return scale_ * std::log(std::log(x));
    case Kind::kPower: return scale_ * std::pow(x, exponent_);
    case Kind::kSqrtLnLn: return scale_ * std::sqrt(x * std::log(std::log(x)));
    case Kind::kCustomTable: {
      const double tt = t > 0.0 ? t : knots_.front().t;
      const std::size_t k = segment(tt);
      const Knot& a = knots_[k];
      const Knot& b = knots_[k + 1];
      const double w = (std::log(tt) - std::log(a.t)) / (std::log(b.t) - std::log(a.t));
      return scale_ * (a.value + (b.value - a.value) * w);
    }
  }
  return 0.0;
}

double GFunction::derivative(double t) const {
  const double x = t + shift_;
  switch (kind_) {
    case Kind::kLog: return scale_ / x;
    case Kind::kIteratedLog: return scale_ / (x * std::log(x));
    case Kind::kPower: return scale_ * exponent_ * std::pow(x, exponent_ - 1.0);
    case Kind::kSqrtLnLn: {
      const double lx = std::log(x);
      const double lnln = std::log(lx);
      return scale_ * (lnln + 1.0 / lx) / (2.0 * std::sqrt(x * lnln));
    }
    case Kind::kCustomTable: {
      // Right derivative at knots.
      const double tt = t > 0.0 ? t : knots_.front().t;
      const std::size_t k = segment(tt);
      const Knot& a = knots_[k];
      const Knot& b = knots_[k + 1];
      const double slope = (b.value - a.value) / (std::log(b.t) - std::log(a.t));
      return scale_ * slope / tt;
    }
  }
  return 0.0;
}

std::string GFunction::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << "(";
  switch (kind_) {
    case Kind::kPower: os << "exponent=" << format_double(exponent_) << ",scale=" << format_double(scale_)
                                 << ",shift=" << format_double(shift_); break;
    case Kind::kCustomTable:
      os << "scale=" << format_double(scale_) << ",knots=";
      for (std::size_t k = 0; k < knots_.size(); ++k) {
        os << (k ? ";" : "") << format_double(knots_[k].t) << ":" << format_double(knots_[k].value);
      }
      break;
    default: os << "scale=" << format_double(scale_) << ",shift=" << format_double(shift_); break;
  }
  os << ")";
  return os.str();
}

std::string_view to_string(GFunction::Kind kind) {
  switch (kind) {
    case GFunction::Kind::kLog: return "log";
    case GFunction::Kind::kIteratedLog: return "iterated-log";
    case GFunction::Kind::kPower: return "power";
    case GFunction::Kind::kSqrtLnLn: return "sqrt-lnln";
    case GFunction::Kind::kCustomTable: return "custom-table";
  }
  return "?";
}

std::optional<GFunction::Kind> parse_g_kind(std::string_view name) {
  for (auto k : {GFunction::Kind::kLog, GFunction::Kind::kIteratedLog, GFunction::Kind::kPower,
                 GFunction::Kind::kSqrtLnLn, GFunction::Kind::kCustomTable}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Admissibility

bool GValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const GCheck& c) { return c.passed; });
}

std::vector<std::string> GValidationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(c.hypothesis);
  }
  return out;
}

const GCheck* GValidationReport::find(std::string_view hypothesis) const {
  for (const auto& c : checks) {
    if (c.hypothesis == hypothesis) return &c;
  }
  return nullptr;
}

std::vector<std::int64_t> validation_grid() {
  std::vector<std::int64_t> grid;
  for (int j = 0; j <= 30; ++j) grid.push_back(std::int64_t{1} << j);
  return grid;
}

namespace {

void fail(GCheck& check, std::int64_t t, std::string detail) {
  if (!check.passed) return;  // keep the first violation
  check.passed = false;
  check.first_violation = t;
  check.detail = std::move(detail);
}

// Relative slack for comparing the closed-form derivative against finite
// differences; everything else is compared exactly.
constexpr double kDerivativeSlack = 1e-9;

}  // namespace

GValidationReport validate_g(const GFunction& g) {
  const auto grid = validation_grid();
  const std::size_t m = grid.size();
  std::vector<double> val(m), next(m), diff(m), deriv(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto t = static_cast<double>(grid[k]);
    val[k] = g.value(t);
    next[k] = g.value(t + 1.0);
    diff[k] = next[k] - val[k];
    deriv[k] = g.derivative(t);
  }

  auto named = [](const char* hypothesis) {
    GCheck c;
    c.hypothesis = hypothesis;
    return c;
  };
  GCheck positive = named("positive");
  GCheck increasing = named("increasing");
  GCheck concave = named("concave");
  GCheck sublinear = named("sub-linear");
  GCheck unbounded = named("unbounded");
  GCheck derivative = named("derivative");

  for (std::size_t k = 0; k < m; ++k) {
    const std::int64_t t = grid[k];
    if (!(val[k] > 0.0) || !std::isfinite(val[k])) fail(positive, t, "g(t) <= 0");

    if (!(diff[k] >= 0.0)) fail(increasing, t, "g(t+1) < g(t)");
    if (k > 0 && !(val[k] >= val[k - 1])) fail(increasing, t, "g decreases between grid points");

    if (k > 0 && !(diff[k] <= diff[k - 1])) fail(concave, t, "g(t+1)-g(t) increased");
    if (k > 1) {
      const double s_prev = (val[k - 1] - val[k - 2]) / static_cast<double>(grid[k - 1] - grid[k - 2]);
      const double s_cur = (val[k] - val[k - 1]) / static_cast<double>(grid[k] - grid[k - 1]);
      if (!(s_cur <= s_prev)) fail(concave, grid[k - 1], "secant slope increased");
    }

    if (k > 0) {
      const double r_prev = val[k - 1] / static_cast<double>(grid[k - 1]);
      const double r_cur = val[k] / static_cast<double>(t);
      if (!(r_cur < r_prev)) fail(sublinear, t, "g(t)/t did not decrease");
    }

    if (!(deriv[k] >= 0.0) || !std::isfinite(deriv[k])) {
      fail(derivative, t, "g'(t) negative or not finite");
    } else {
      // Concave g: g(t+1)-g(t) <= g'(t) <= g(t)-g(t-1).
      // Unit differences of g lose about one ulp of g(t) to cancellation.
      const double slack = kDerivativeSlack * std::max(1.0, std::abs(deriv[k])) +
                           4.0 * std::numeric_limits<double>::epsilon() * std::abs(val[k]);
      if (diff[k] > deriv[k] + slack) fail(derivative, t, "g'(t) below forward difference");
      if (t >= 2) {
        const double back = val[k] - g.value(static_cast<double>(t) - 1.0);
        if (deriv[k] > back + slack) fail(derivative, t, "g'(t) above backward difference");
      }
    }
  }

  if (sublinear.passed && !(val.back() / static_cast<double>(grid.back()) <= 0.5 * val.front())) {
    fail(sublinear, grid.back(), "g(t)/t not shrinking toward 0");
  }
  if (!(val.back() > val.front() + 10.0)) {
    fail(unbounded, grid.back(), "g(2^30) <= g(1) + 10");
  }
  if (derivative.passed && !(deriv.back() <= 0.5 * deriv.front())) {
    fail(derivative, grid.back(), "g'(t) not shrinking toward 0");
  }

  return GValidationReport{{positive, increasing, concave, sublinear, unbounded, derivative}};
}

}  // namespace gforce
