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

#include "gforce/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace gforce {

ExperimentError::ExperimentError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

std::string_view to_string(CheckType type) {
  switch (type) {
    case CheckType::kForcingSandwich: return "forcing-sandwich";
    case CheckType::kRegretRatio: return "regret-ratio";
    case CheckType::kForcingRemainder: return "forcing-remainder";
    case CheckType::kIsmCountRatio: return "ism-count-ratio";
    case CheckType::kIsmRemainder: return "ism-remainder";
    case CheckType::kPhaseOrder: return "phase-order";
    case CheckType::kRoundRobinRate: return "round-robin-rate";
  }
  return "?";
}

std::optional<CheckType> parse_check_type(std::string_view name) {
  for (auto t : {CheckType::kForcingSandwich, CheckType::kRegretRatio, CheckType::kForcingRemainder,
                 CheckType::kIsmCountRatio, CheckType::kIsmRemainder, CheckType::kPhaseOrder,
                 CheckType::kRoundRobinRate}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

double CheckSpec::param(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits on commas outside parentheses.
std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || (s[i] == ',' && depth == 0)) {
      auto item = trim(s.substr(start, i - start));
      if (!item.empty()) out.emplace_back(item);
      start = i + 1;
    } else if (s[i] == '(') {
      ++depth;
    } else if (s[i] == ')') {
      --depth;
    }
  }
  return out;
}

double to_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("expected a number, got '" + std::string(s) + "'");
  }
  return v;
}

std::int64_t to_int(std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty()) return v;
  // Accept integral values written as 1e6.
  const double d = to_double(s);
  if (d != static_cast<double>(static_cast<std::int64_t>(d))) {
    throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
  }
  return static_cast<std::int64_t>(d);
}

std::uint64_t to_uint(std::string_view s) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("expected a non-negative integer, got '" + std::string(s) + "'");
  }
  return v;
}

struct Entry {
  std::string value;
  int line = 0;
};

struct Section {
  std::string type;
  std::string name;
  int line = 0;
  std::map<std::string, Entry> entries;

  bool has(const std::string& key) const { return entries.count(key) != 0; }
  const Entry& at(const std::string& key) const {
    auto it = entries.find(key);
    if (it == entries.end()) throw ExperimentError(line, "[" + type + " " + name + "] is missing '" + key + "'");
    return it->second;
  }
  void allow(std::initializer_list<const char*> keys) const {
    for (const auto& [k, e] : entries) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; })) {
        throw ExperimentError(e.line, "unknown key '" + k + "' in [" + type + (name.empty() ? "" : " " + name) + "]");
      }
    }
  }
};

// Runs `fn`, rethrowing std::invalid_argument as an error at `line`.
template <typename Fn>
auto at_line(int line, Fn fn) {
  try {
    return fn();
  } catch (const ExperimentError&) {
    throw;
  } catch (const std::exception& e) {
    throw ExperimentError(line, e.what());
  }
}

std::vector<Section> tokenize(std::string_view text) {
  std::vector<Section> sections;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ExperimentError(line, "unterminated section header");
      auto body = trim(s.substr(1, s.size() - 2));
      Section sec;
      sec.line = line;
      const auto sp = body.find_first_of(" \t");
      sec.type = std::string(body.substr(0, sp));
      if (sp != std::string_view::npos) sec.name = std::string(trim(body.substr(sp)));
      if (sec.type.empty()) throw ExperimentError(line, "empty section header");
      sections.push_back(std::move(sec));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ExperimentError(line, "expected 'key = value'");
    if (sections.empty()) throw ExperimentError(line, "key outside of any section");
    const std::string key(trim(s.substr(0, eq)));
    const std::string value(trim(s.substr(eq + 1)));
    if (key.empty()) throw ExperimentError(line, "empty key");
    auto& entries = sections.back().entries;
    if (entries.count(key)) throw ExperimentError(line, "duplicate key '" + key + "'");
    entries[key] = Entry{value, line};
  }
  return sections;
}

GFunction parse_g_section(const Section& sec) {
  sec.allow({"kind", "scale", "shift", "exponent", "table"});
  const auto& kind_e = sec.at("kind");
  const auto kind = parse_g_kind(kind_e.value);
  if (!kind) throw ExperimentError(kind_e.line, "unknown g kind '" + kind_e.value + "'");
  auto num = [&](const char* key, double fallback) {
    if (!sec.has(key)) return fallback;
    const auto& e = sec.at(key);
    return at_line(e.line, [&] { return to_double(e.value); });
  };
  const int line = kind_e.line;
  return at_line(line, [&] {
    switch (*kind) {
      case GFunction::Kind::kLog: return GFunction::log(num("scale", 1.0), num("shift", 1.0));
      case GFunction::Kind::kIteratedLog:
        return GFunction::iterated_log(num("scale", 10.0), num("shift", GFunction::kDefaultLnLnShift));
      case GFunction::Kind::kPower:
        return GFunction::power(num("exponent", 0.5), num("scale", 1.0), num("shift", 0.0));
      case GFunction::Kind::kSqrtLnLn:
        return GFunction::sqrt_lnln(num("scale", 1.0), num("shift", GFunction::kDefaultLnLnShift));
      case GFunction::Kind::kCustomTable: {
        const auto& e = sec.at("table");
        std::vector<GFunction::Knot> knots;
        for (const auto& item : split_list(e.value)) {
          const auto colon = item.find(':');
          if (colon == std::string::npos) throw ExperimentError(e.line, "table entries are t:value");
          knots.push_back({at_line(e.line, [&] { return to_double(item.substr(0, colon)); }),
                           at_line(e.line, [&] { return to_double(item.substr(colon + 1)); })});
        }
        return at_line(e.line, [&] { return GFunction::custom_table(std::move(knots), num("scale", 1.0)); });
      }
    }
    throw ExperimentError(line, "unreachable g kind");
  });
}

}  // namespace

std::vector<std::uint64_t> parse_seed_range(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& item : split_list(text)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(to_uint(item));
      continue;
    }
    const auto lo = to_uint(std::string_view(item).substr(0, dots));
    const auto hi = to_uint(std::string_view(item).substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("seed range '" + item + "' is empty");
    if (hi - lo > 10'000'000) throw std::invalid_argument("seed range '" + item + "' is too large");
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  if (seeds.empty()) throw std::invalid_argument("no seeds given");
  return seeds;
}

double parse_pass_fraction(std::string_view text) {
  text = trim(text);
  double f = 0.0;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const double num = to_double(text.substr(0, slash));
    const double den = to_double(text.substr(slash + 1));
    if (!(den > 0.0)) throw std::invalid_argument("pass fraction denominator must be positive");
    f = num / den;
  } else {
    f = to_double(text);
  }
  if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("pass fraction must lie in [0, 1]");
  return f;
}

ExperimentFile parse_experiment(std::string_view text) {
  ExperimentFile ex;
  const auto sections = tokenize(text);
  std::set<std::string> seen_runs;
  std::set<std::string> seen_checks;
  bool seen_output = false;

  // Definitions first, so runs and checks may appear anywhere.
  for (const auto& sec : sections) {
    const bool named = sec.type != "output";
    if (named && sec.name.empty()) throw ExperimentError(sec.line, "[" + sec.type + "] needs a name");
    if (sec.type == "instance") {
      sec.allow({"arms"});
      const auto& e = sec.at("arms");
      std::vector<ArmSpec> arms;
      for (const auto& item : split_list(e.value)) arms.push_back(at_line(e.line, [&] { return parse_arm(item); }));
      if (ex.instances.count(sec.name)) throw ExperimentError(sec.line, "instance '" + sec.name + "' defined twice");
      ex.instances.emplace(sec.name, at_line(e.line, [&] { return BanditInstance(std::move(arms)); }));
    } else if (sec.type == "g") {
      if (ex.g_functions.count(sec.name)) throw ExperimentError(sec.line, "g '" + sec.name + "' defined twice");
      ex.g_functions.emplace(sec.name, parse_g_section(sec));
    } else if (sec.type == "policy") {
      sec.allow({"kind", "tie"});
      PolicySpec p;
      const auto& k = sec.at("kind");
      const auto kind = parse_policy_kind(k.value);
      if (!kind) throw ExperimentError(k.line, "unknown policy kind '" + k.value + "'");
      p.kind = *kind;
      if (sec.has("tie")) {
        const auto& t = sec.at("tie");
        const auto tie = parse_tie_rule(t.value);
        if (!tie) throw ExperimentError(t.line, "unknown tie rule '" + t.value + "'");
        p.tie = *tie;
      }
      if (ex.policies.count(sec.name)) throw ExperimentError(sec.line, "policy '" + sec.name + "' defined twice");
      ex.policies.emplace(sec.name, p);
    } else if (sec.type == "output") {
      if (seen_output) throw ExperimentError(sec.line, "[output] given twice");
      seen_output = true;
      sec.allow({"dir"});
      ex.output_dir = sec.at("dir").value;
    } else if (sec.type != "run" && sec.type != "check") {
      throw ExperimentError(sec.line, "unknown section type '" + sec.type + "'");
    }
  }

  for (const auto& sec : sections) {
    if (sec.type != "run") continue;
    sec.allow({"instances", "g", "policies", "seeds", "horizon", "checkpoints"});
    if (!seen_runs.insert(sec.name).second) throw ExperimentError(sec.line, "run '" + sec.name + "' defined twice");
    RunGroup run;
    run.name = sec.name;
    run.line = sec.line;
    auto names = [&](const char* key, const auto& table, std::vector<std::string>& out) {
      const auto& e = sec.at(key);
      out = split_list(e.value);
      if (out.empty()) throw ExperimentError(e.line, std::string("'") + key + "' is empty");
      for (const auto& n : out) {
        if (!table.count(n)) throw ExperimentError(e.line, std::string(key) + ": undefined name '" + n + "'");
      }
    };
    names("instances", ex.instances, run.instances);
    names("policies", ex.policies, run.policies);
    if (sec.has("g")) names("g", ex.g_functions, run.g_functions);
    const bool needs_g = std::any_of(run.policies.begin(), run.policies.end(),
                                     [&](const std::string& p) { return uses_g(ex.policies.at(p).kind); });
    if (needs_g && run.g_functions.empty()) {
      throw ExperimentError(sec.line, "run '" + run.name + "' uses a g policy but names no g");
    }
    const auto& seeds = sec.at("seeds");
    run.seeds = at_line(seeds.line, [&] { return parse_seed_range(seeds.value); });
    if (std::set<std::uint64_t>(run.seeds.begin(), run.seeds.end()).size() != run.seeds.size()) {
      throw ExperimentError(seeds.line, "seeds must be distinct");
    }
    const auto& h = sec.at("horizon");
    run.horizon = at_line(h.line, [&] { return to_int(h.value); });
    for (const auto& inst : run.instances) {
      if (run.horizon < static_cast<std::int64_t>(ex.instances.at(inst).size())) {
        throw ExperimentError(h.line, "horizon is below K for instance '" + inst + "'");
      }
    }
    if (sec.has("checkpoints")) {
      const auto& c = sec.at("checkpoints");
      run.checkpoint_points = static_cast<int>(at_line(c.line, [&] { return to_int(c.value); }));
      if (run.checkpoint_points < 2) throw ExperimentError(c.line, "checkpoints must be >= 2");
    }
    ex.runs.push_back(std::move(run));
  }

  for (const auto& sec : sections) {
    if (sec.type != "check") continue;
    sec.allow({"type", "run", "versus", "policy", "g", "expect", "min_pass", "delta", "burn_in", "tail_fraction",
               "lo", "hi", "slack", "margin", "tolerance"});
    if (!seen_checks.insert(sec.name).second) throw ExperimentError(sec.line, "check '" + sec.name + "' defined twice");
    CheckSpec c;
    c.name = sec.name;
    c.line = sec.line;
    const auto& t = sec.at("type");
    const auto type = parse_check_type(t.value);
    if (!type) throw ExperimentError(t.line, "unknown check type '" + t.value + "'");
    c.type = *type;
    auto group = [&](const char* key) -> const RunGroup& {
      const auto& e = sec.at(key);
      auto it = std::find_if(ex.runs.begin(), ex.runs.end(), [&](const RunGroup& r) { return r.name == e.value; });
      if (it == ex.runs.end()) throw ExperimentError(e.line, std::string(key) + ": undefined run '" + e.value + "'");
      return *it;
    };
    const RunGroup& g1 = group("run");
    c.run = g1.name;
    if (c.type == CheckType::kPhaseOrder) c.versus = group("versus").name;
    if (sec.has("policy")) {
      const auto& e = sec.at("policy");
      if (std::find(g1.policies.begin(), g1.policies.end(), e.value) == g1.policies.end()) {
        throw ExperimentError(e.line, "policy '" + e.value + "' is not part of run '" + g1.name + "'");
      }
      c.policy = e.value;
    }
    if (sec.has("g")) {
      const auto& e = sec.at("g");
      if (std::find(g1.g_functions.begin(), g1.g_functions.end(), e.value) == g1.g_functions.end()) {
        throw ExperimentError(e.line, "g '" + e.value + "' is not part of run '" + g1.name + "'");
      }
      c.g = e.value;
    }
    if (sec.has("expect")) c.expect = sec.at("expect").value;
    if (c.type == CheckType::kRegretRatio && c.expect.empty()) {
      throw ExperimentError(sec.line, "regret-ratio check needs 'expect'");
    }
    if (sec.has("min_pass")) {
      const auto& e = sec.at("min_pass");
      c.min_pass = at_line(e.line, [&] { return parse_pass_fraction(e.value); });
    }
    for (const char* key : {"delta", "burn_in", "tail_fraction", "lo", "hi", "slack", "margin", "tolerance"}) {
      if (!sec.has(key)) continue;
      const auto& e = sec.at(key);
      c.params[key] = at_line(e.line, [&] { return to_double(e.value); });
    }
    if (c.params.count("delta")) {
      const double d = c.params["delta"];
      if (!(d > 0.0 && d < 0.5)) throw ExperimentError(sec.at("delta").line, "delta must lie in (0, 0.5)");
    }
    ex.checks.push_back(std::move(c));
  }
  return ex;
}

ExperimentFile load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ExperimentError(0, "cannot read config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment(buf.str());
}

std::vector<PlannedRun> plan_runs(const ExperimentFile& experiment) {
  std::vector<PlannedRun> out;
  for (const auto& group : experiment.runs) {
    for (const auto& inst_name : group.instances) {
      const auto& inst = experiment.instances.at(inst_name);
      for (const auto& pol_name : group.policies) {
        const auto& pol = experiment.policies.at(pol_name);
        // Baselines ignore g: one run per seed, tagged with the group's first g (if any) for reporting.
        std::vector<std::string> gs = group.g_functions;
        if (!uses_g(pol.kind)) gs = {gs.empty() ? std::string("-") : gs.front()};
        for (const auto& g_name : gs) {
          for (auto seed : group.seeds) {
            RunConfig cfg{inst};
            cfg.policy = pol.kind;
            cfg.tie = pol.tie;
            if (g_name != "-") cfg.g = experiment.g_functions.at(g_name);
            cfg.horizon = group.horizon;
            cfg.seed = seed;
            cfg.checkpoints = default_checkpoints(inst.size(), group.horizon, group.checkpoint_points);
            out.push_back(PlannedRun{
                group.name + "." + inst_name + "." + g_name + "." + pol_name + ".s" + std::to_string(seed),
                group.name, inst_name, g_name, pol_name, std::move(cfg)});
          }
        }
      }
    }
  }
  return out;
}

}  // namespace gforce
