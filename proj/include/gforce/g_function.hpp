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

namespace gforce {

/// Exploration-rate function g(t) driving both forcing and inflated-mean
/// policies. Every kind is closed form with a closed-form derivative.
///
///   log          scale * ln(t + shift)                 default shift 1
///   iterated-log scale * ln(ln(t + shift))             default shift e^e, scale 10
///   power        scale * (t + shift)^exponent          default shift 0
///   sqrt-lnln    scale * sqrt((t + shift) ln ln(t + shift))  default shift e^e
///   custom-table piecewise linear in ln t through (t_k, v_k) knots,
///                extended past the ends with the outer segments' slopes
///
/// Construction only rejects parameters that make the formula undefined.
/// Admissibility (positive, increasing, concave, sub-linear, unbounded) is
/// a separate numeric check, see validate_g().
class GFunction {
 public:
  enum class Kind { kLog, kIteratedLog, kPower, kSqrtLnLn, kCustomTable };

  struct Knot {
    double t;
    double value;
    friend bool operator==(const Knot&, const Knot&) = default;
  };

  static GFunction log(double scale = 1.0, double shift = 1.0);
  static GFunction iterated_log(double scale = 10.0, double shift = kDefaultLnLnShift);
  static GFunction power(double exponent = 0.5, double scale = 1.0, double shift = 0.0);
  static GFunction sqrt_lnln(double scale = 1.0, double shift = kDefaultLnLnShift);
  static GFunction custom_table(std::vector<Knot> knots, double scale = 1.0);

  /// Default-parameter instance of a kind (custom-table has no default).
  static GFunction with_defaults(Kind kind);

  Kind kind() const { return kind_; }
  double scale() const { return scale_; }
  double shift() const { return shift_; }
  double exponent() const { return exponent_; }
  const std::vector<Knot>& knots() const { return knots_; }

  double operator()(double t) const { return value(t); }
  double value(double t) const;
  double derivative(double t) const;

  /// Canonical one-line description, e.g. "power(exponent=0.5,scale=1,shift=0)".
  std::string describe() const;

  friend bool operator==(const GFunction&, const GFunction&) = default;

  static const double kDefaultLnLnShift;  // e^e

 private:
  GFunction(Kind kind, double scale, double shift, double exponent, std::vector<Knot> knots);

  // Index of the ln-linear segment covering t.
  std::size_t segment(double t) const;

  Kind kind_;
  double scale_;
  double shift_;
  double exponent_;
  std::vector<Knot> knots_;
};

std::string_view to_string(GFunction::Kind kind);
std::optional<GFunction::Kind> parse_g_kind(std::string_view name);

inline double eval_g(const GFunction& g, std::int64_t t) { return g.value(static_cast<double>(t)); }
inline double eval_g_derivative(const GFunction& g, std::int64_t t) {
  return g.derivative(static_cast<double>(t));
}

/// One hypothesis of the admissibility check.
struct GCheck {
  std::string hypothesis;  // positive, increasing, concave, sub-linear, unbounded, derivative
  bool passed = true;
  std::optional<std::int64_t> first_violation;  // grid point t
  std::string detail;
};

struct GValidationReport {
  std::vector<GCheck> checks;

  bool passed() const;
  /// Names of failed hypotheses, in check order.
  std::vector<std::string> failures() const;
  const GCheck* find(std::string_view hypothesis) const;
};

/// Grid {2^j : 0 <= j <= 30} used by validate_g.
std::vector<std::int64_t> validation_grid();

/// Evaluates every admissibility hypothesis numerically on validation_grid().
/// Never throws for a constructed GFunction; inadmissible g yields a failed
/// report.
GValidationReport validate_g(const GFunction& g);

}  // namespace gforce
