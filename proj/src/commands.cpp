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

#include "gforce/commands.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "gforce/diagnostics.hpp"
#include "gforce/format.hpp"

namespace gforce {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path output_dir_for(const ExperimentFile& ex, const CliOptions& options) {
  return options.out ? *options.out : fs::path(ex.output_dir);
}

fs::path trajectory_json_path(const fs::path& dir, const std::string& run_id) {
  return dir / "trajectories" / (run_id + ".json");
}

fs::path trajectory_csv_path(const fs::path& dir, const std::string& run_id) {
  return dir / "trajectories" / (run_id + ".csv");
}

RunLabels labels_of(const PlannedRun& p) { return {p.run_id, p.group, p.instance, p.g, p.policy}; }

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string host_name() {
  char buf[256] = {};
  if (gethostname(buf, sizeof buf - 1) != 0) return "unknown";
  return buf;
}

// Loads experiment + overrides; reports config errors on `err`.
std::optional<ExperimentFile> load_config(const CliOptions& options, std::ostream& err) {
  try {
    auto ex = load_experiment(options.config);
    apply_overrides(ex, options);
    return ex;
  } catch (const ExperimentError& e) {
    err << "config error: " << options.config.string() << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
  }
  return std::nullopt;
}

std::size_t required_count(double fraction, std::size_t total) {
  // Tolerates fractions such as 29/32 written as a rounded decimal.
  return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(total) - 1e-9));
}

std::string describe_arm_failure(std::size_t arm, double value, double lo, double hi) {
  std::ostringstream os;
  os << "arm " << arm + 1 << ": " << format_double(value) << " outside [" << format_double(lo) << ", "
     << format_double(hi) << "]";
  return os.str();
}

std::string describe_value_failure(const char* what, double value, double lo, double hi) {
  std::ostringstream os;
  os << what << " " << format_double(value) << " outside [" << format_double(lo) << ", " << format_double(hi) << "]";
  return os.str();
}

double expected_limit(const CheckSpec& check, const TheoremBounds& b) {
  if (check.expect == "s-delta") return b.s_delta;
  if (check.expect == "k-minus-one") return static_cast<double>(b.k_minus_one);
  return std::stod(check.expect);
}

}  // namespace

void apply_overrides(ExperimentFile& experiment, const CliOptions& options) {
  if (options.seeds) {
    const auto seeds = parse_seed_range(*options.seeds);
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
      throw std::invalid_argument("--seeds: seeds must be distinct");
    }
    for (auto& r : experiment.runs) r.seeds = seeds;
  }
  if (options.horizon) {
    for (auto& r : experiment.runs) {
      for (const auto& inst : r.instances) {
        if (*options.horizon < static_cast<std::int64_t>(experiment.instances.at(inst).size())) {
          throw std::invalid_argument("--horizon is below K for instance '" + inst + "'");
        }
      }
      r.horizon = *options.horizon;
    }
  }
  if (options.delta && !(*options.delta > 0.0 && *options.delta < 0.5)) {
    throw std::invalid_argument("--delta must lie in (0, 0.5)");
  }
  if (options.burn_in && !(*options.burn_in >= 0.0 && *options.burn_in <= 1.0)) {
    throw std::invalid_argument("--burn-in must lie in [0, 1]");
  }
  if (options.tail_fraction && !(*options.tail_fraction > 0.0 && *options.tail_fraction <= 1.0)) {
    throw std::invalid_argument("--tail-fraction must lie in (0, 1]");
  }
}

CheckVerdict evaluate_check(const CheckSpec& check, const std::vector<const StoredTrajectory*>& primary,
                            const std::vector<const StoredTrajectory*>& versus, const CliOptions& options) {
  CheckVerdict v;
  v.name = check.name;
  v.type = check.type;
  json params;
  params["run"] = check.run;
  params["min_pass"] = check.min_pass;

  auto record = [&](bool ok, const std::string& run_id, std::optional<std::int64_t> n, std::string msg) {
    ++v.total;
    if (ok) {
      ++v.passed_count;
    } else {
      v.failures.push_back({run_id, n, std::move(msg)});
    }
  };

  const double tail = check.param("tail_fraction", options.tail_fraction.value_or(kDefaultTailFraction));

  switch (check.type) {
    case CheckType::kForcingSandwich: {
      const double delta = options.delta.value_or(check.param("delta", kDefaultDelta));
      const double burn = options.burn_in.value_or(check.param("burn_in", kDefaultBurnIn));
      params["delta"] = delta;
      params["burn_in"] = burn;
      for (const auto* st : primary) {
        const auto& traj = st->trajectory;
        const auto verdict = check_forcing_sandwich(traj, traj.config.g, delta, burn);
        if (verdict.passed) {
          record(true, st->labels.run_id, std::nullopt, "");
        } else {
          const auto& f = verdict.violations.front();
          record(false, st->labels.run_id, f.n,
                 "T_" + std::to_string(f.arm + 1) + "=" + std::to_string(f.count) + " outside [" +
                     format_double(f.lower) + ", " + format_double(f.upper) + "]");
        }
      }
      break;
    }
    case CheckType::kRegretRatio: {
      const double lo = check.param("lo", 0.95);
      const double hi = check.param("hi", 1.05);
      params["expect"] = check.expect;
      params["lo"] = lo;
      params["hi"] = hi;
      params["tail_fraction"] = tail;
      for (const auto* st : primary) {
        const auto& traj = st->trajectory;
        const auto bounds = TheoremBounds::of(traj.config.instance);
        const double target = expected_limit(check, bounds);
        params["limit"] = target;
        const auto series = regret_ratio(traj, traj.config.g);
        const auto summary = tail_estimate(series, tail);
        const bool ok = summary.min >= lo * target && summary.max <= hi * target;
        std::optional<std::int64_t> where;
        if (!ok) {
          const std::size_t take = series.size() - static_cast<std::size_t>(summary.points);
          for (std::size_t j = take; j < series.size(); ++j) {
            if (series.values[j] < lo * target || series.values[j] > hi * target) {
              where = series.n[j];
              break;
            }
          }
        }
        record(ok, st->labels.run_id, where,
               ok ? "" : describe_value_failure("R/g tail", summary.min < lo * target ? summary.min : summary.max,
                                                lo * target, hi * target));
      }
      break;
    }
    case CheckType::kForcingRemainder: {
      const double slack = check.param("slack", 0.05);
      params["slack"] = slack;
      for (const auto* st : primary) {
        const auto& traj = st->trajectory;
        const auto bounds = TheoremBounds::of(traj.config.instance);
        params["s_delta"] = bounds.s_delta;
        const auto series = forcing_remainder(traj, bounds, traj.config.g);
        const double last = series.values.back();
        const bool ok = last >= -slack && last <= bounds.s_delta + slack;
        record(ok, st->labels.run_id, series.n.back(),
               ok ? "" : describe_value_failure("remainder", last, -slack, bounds.s_delta + slack));
      }
      break;
    }
    case CheckType::kIsmCountRatio: {
      const double lo = check.param("lo", 0.8);
      const double hi = check.param("hi", 1.2);
      params["lo"] = lo;
      params["hi"] = hi;
      for (const auto* st : primary) {
        const auto& traj = st->trajectory;
        const auto bounds = TheoremBounds::of(traj.config.instance);
        bool ok = true;
        std::string msg;
        for (const auto& s : ism_count_ratio(traj, bounds, traj.config.g)) {
          const double last = s.values.back();
          if (last < lo || last > hi) {
            ok = false;
            if (msg.empty()) msg = describe_arm_failure(*s.arm, last, lo, hi);
          }
        }
        record(ok, st->labels.run_id, traj.records.back().n, msg);
      }
      break;
    }
    case CheckType::kIsmRemainder: {
      const double margin = check.param("margin", 1.0);
      params["margin"] = margin;
      for (const auto* st : primary) {
        const auto& traj = st->trajectory;
        const auto bounds = TheoremBounds::of(traj.config.instance);
        params["upper_remainder_coeff"] = bounds.upper_remainder_coeff;
        params["lower_remainder_coeff"] = bounds.lower_remainder_coeff;
        const auto series = ism_remainder_normalized(traj, bounds, traj.config.g);
        const double lo = bounds.lower_remainder_coeff - margin;
        const double hi = bounds.upper_remainder_coeff + margin;
        if (series.skipped.back()) {
          record(false, st->labels.run_id, series.n.back(), "g(n) <= e at the final checkpoint");
          continue;
        }
        const double last = series.values.back();
        const bool ok = last >= lo && last <= hi;
        record(ok, st->labels.run_id, series.n.back(), ok ? "" : describe_value_failure("normalized remainder", last, lo, hi));
      }
      break;
    }
    case CheckType::kPhaseOrder: {
      params["versus"] = check.versus;
      std::map<std::tuple<std::string, std::string, std::uint64_t>, const StoredTrajectory*> other;
      for (const auto* st : versus) {
        other[{st->labels.instance, st->labels.policy, st->trajectory.config.seed}] = st;
      }
      for (const auto* st : primary) {
        auto it = other.find({st->labels.instance, st->labels.policy, st->trajectory.config.seed});
        if (it == other.end()) {
          record(false, st->labels.run_id, std::nullopt, "no paired run in '" + check.versus + "'");
          continue;
        }
        const auto& inst = st->trajectory.config.instance;
        const double a = optimal_share_ratio(st->trajectory, inst).values.back();
        const double b = optimal_share_ratio(it->second->trajectory, inst).values.back();
        record(a > b, st->labels.run_id, st->trajectory.records.back().n,
               a > b ? "" : "share " + format_double(a) + " <= " + format_double(b) + " in " + it->second->labels.run_id);
      }
      break;
    }
    case CheckType::kRoundRobinRate: {
      const double tol = check.param("tolerance", 1e-6);
      params["tolerance"] = tol;
      for (const auto* st : primary) {
        const auto& traj = st->trajectory;
        const auto& inst = traj.config.instance;
        const auto& last = traj.final_record();
        const double n = static_cast<double>(last.n);
        const double k = static_cast<double>(inst.size());
        const double gap = std::abs(last.pseudo_regret / n - inst.s_delta() / k);
        const bool ok = gap <= k / n + tol;
        record(ok, st->labels.run_id, last.n,
               ok ? "" : "|R/n - S/K| = " + format_double(gap) + " > " + format_double(k / n + tol));
      }
      break;
    }
  }

  v.required = required_count(check.min_pass, v.total);
  v.passed = v.total > 0 && v.passed_count >= v.required;
  if (v.total == 0) v.failures.push_back({"", std::nullopt, "no trajectories selected"});
  v.parameters = std::move(params);
  return v;
}

json verdict_to_json(const CheckVerdict& v) {
  json failures = json::array();
  for (const auto& f : v.failures) {
    json jf{{"run_id", f.run_id}, {"message", f.message}};
    jf["n"] = f.n ? json(*f.n) : json(nullptr);
    failures.push_back(std::move(jf));
  }
  return {{"check", v.name},       {"type", std::string(to_string(v.type))},
          {"passed", v.passed},    {"passed_runs", v.passed_count},
          {"total_runs", v.total}, {"required_runs", v.required},
          {"parameters", v.parameters}, {"failures", std::move(failures)}};
}

int cmd_run(const CliOptions& options, std::ostream& out, std::ostream& err) {
  auto ex = load_config(options, err);
  if (!ex) return kExitConfigError;
  const auto plan = plan_runs(*ex);
  for (const auto& p : plan) {
    try {
      validate(p.config);
    } catch (const std::exception& e) {
      err << "config error: run " << p.run_id << ": " << e.what() << "\n";
      return kExitConfigError;
    }
  }

  std::vector<RunConfig> configs;
  configs.reserve(plan.size());
  for (const auto& p : plan) configs.push_back(p.config);
  const auto results = sweep(configs, options.workers);

  const fs::path dir = output_dir_for(*ex, options);
  int status = kExitOk;
  // Single writer: results are persisted in plan order from this thread.
  for (std::size_t j = 0; j < plan.size(); ++j) {
    const auto& p = plan[j];
    const auto& r = results[j];
    if (!r.ok()) {
      err << p.run_id << ": FAILED: " << r.error << "\n";
      status = kExitCheckFailed;
      continue;
    }
    const auto& traj = *r.trajectory;
    const auto labels = labels_of(p);
    try {
      write_text(trajectory_json_path(dir, p.run_id), trajectory_to_json(labels, traj).dump(1) + "\n");
      write_text(trajectory_csv_path(dir, p.run_id), trajectory_to_csv(labels, traj));
    } catch (const std::exception& e) {
      err << p.run_id << ": " << e.what() << "\n";
      status = kExitCheckFailed;
      continue;
    }
    const auto& last = traj.final_record();
    out << p.run_id << " n=" << last.n << " R=" << format_double(last.pseudo_regret)
        << " R'=" << format_double(last.sample_regret)
        << " R/g=" << format_double(last.pseudo_regret / eval_g(traj.config.g, last.n)) << "\n";
  }

  json manifest{{"created_utc", utc_now()},
                {"host", host_name()},
                {"config", options.config.string()},
                {"workers", options.workers},
                {"runs", plan.size()}};
  try {
    write_text(dir / "manifest.json", manifest.dump(1) + "\n");
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    status = kExitCheckFailed;
  }
  return status;
}

std::vector<StoredTrajectory> load_trajectories(const fs::path& output_dir) {
  std::vector<StoredTrajectory> out;
  const fs::path dir = output_dir / "trajectories";
  if (!fs::is_directory(dir)) return out;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out.push_back(trajectory_from_json(json::parse(read_text(f))));
  return out;
}

int cmd_check(const CliOptions& options, std::ostream& out, std::ostream& err) {
  auto ex = load_config(options, err);
  if (!ex) return kExitConfigError;
  const fs::path dir = output_dir_for(*ex, options);
  if (ex->checks.empty()) {
    err << "warning: no checks configured\n";
    write_text(dir / "verdicts.json", json{{"all_passed", true}, {"checks", json::array()}}.dump(1) + "\n");
    return kExitOk;
  }

  const auto plan = plan_runs(*ex);
  std::map<std::string, StoredTrajectory> loaded;
  std::map<std::string, std::vector<std::string>> by_group;
  for (const auto& p : plan) by_group[p.group].push_back(p.run_id);

  std::set<std::string> needed;
  for (const auto& c : ex->checks) {
    needed.insert(c.run);
    if (!c.versus.empty()) needed.insert(c.versus);
  }
  for (const auto& p : plan) {
    if (!needed.count(p.group)) continue;
    const auto path = trajectory_json_path(dir, p.run_id);
    if (!fs::exists(path)) {
      err << "missing trajectory: " << path.string() << " (run 'gforce run' first)\n";
      return kExitMissingInputs;
    }
    try {
      auto st = trajectory_from_json(json::parse(read_text(path)));
      if (config_digest(st.trajectory.config) != config_digest(p.config)) {
        err << "stale trajectory: " << path.string() << " does not match the configured run\n";
        return kExitMissingInputs;
      }
      loaded.emplace(p.run_id, std::move(st));
    } catch (const std::exception& e) {
      err << "unreadable trajectory " << path.string() << ": " << e.what() << "\n";
      return kExitMissingInputs;
    }
  }

  auto select = [&](const std::string& group, const CheckSpec& c) {
    std::vector<const StoredTrajectory*> out_runs;
    for (const auto& id : by_group[group]) {
      const auto& st = loaded.at(id);
      if (c.policy && st.labels.policy != *c.policy) continue;
      if (c.g && st.labels.g != *c.g) continue;
      out_runs.push_back(&st);
    }
    return out_runs;
  };

  json verdicts = json::array();
  bool all = true;
  for (const auto& c : ex->checks) {
    CheckVerdict v;
    try {
      v = evaluate_check(c, select(c.run, c), c.versus.empty() ? std::vector<const StoredTrajectory*>{} : select(c.versus, c),
                         options);
    } catch (const std::exception& e) {
      err << "check " << c.name << ": " << e.what() << "\n";
      return kExitConfigError;
    }
    all = all && v.passed;
    out << (v.passed ? "PASS " : "FAIL ") << c.name << " (" << to_string(c.type) << "): " << v.passed_count << "/"
        << v.total << " passed, " << v.required << " required\n";
    if (!v.passed) {
      for (const auto& f : v.failures) {
        out << "  " << f.run_id;
        if (f.n) out << " at n=" << *f.n;
        out << ": " << f.message << "\n";
      }
    }
    verdicts.push_back(verdict_to_json(v));
  }
  write_text(dir / "verdicts.json", json{{"all_passed", all}, {"checks", verdicts}}.dump(1) + "\n");
  return all ? kExitOk : kExitCheckFailed;
}

int cmd_report(const fs::path& output_dir, const CliOptions& options, std::ostream& out, std::ostream& err) {
  std::vector<StoredTrajectory> runs;
  try {
    runs = load_trajectories(output_dir);
  } catch (const std::exception& e) {
    err << "cannot load results: " << e.what() << "\n";
    return kExitMissingInputs;
  }
  if (runs.empty()) {
    err << "no results under " << (output_dir / "trajectories").string() << "\n";
    return kExitMissingInputs;
  }
  const double tail = options.tail_fraction.value_or(kDefaultTailFraction);

  json report_runs = json::array();
  std::ostringstream text;
  std::ostringstream plot;
  plot << diagnostic_csv_header() << "\n";
  text << "gforce report: " << runs.size() << " run(s), tail fraction " << format_double(tail) << "\n\n";

  for (const auto& st : runs) {
    const auto& traj = st.trajectory;
    const auto& cfg = traj.config;
    const auto& inst = cfg.instance;
    const auto bounds = TheoremBounds::of(inst);
    const auto& last = traj.final_record();
    const auto ratio = regret_ratio(traj, cfg.g);
    const auto ratio_tail = tail_estimate(ratio, tail);

    json r;
    r["run_id"] = st.labels.run_id;
    r["group"] = st.labels.group;
    r["instance"] = st.labels.instance;
    r["g"] = st.labels.g;
    r["policy"] = st.labels.policy;
    r["policy_kind"] = std::string(to_string(cfg.policy));
    r["seed"] = cfg.seed;
    r["n"] = last.n;
    r["counts"] = last.counts;
    r["pseudo_regret"] = last.pseudo_regret;
    r["sample_regret"] = last.sample_regret;
    r["regret_over_g_final"] = ratio.values.back();
    r["regret_over_g_tail"] = {{"mean", ratio_tail.mean}, {"min", ratio_tail.min}, {"max", ratio_tail.max}};
    plot << diagnostic_csv_rows(st.labels.run_id, std::string(to_string(ratio.label)), ratio);

    text << st.labels.run_id << "\n  n=" << last.n << " R=" << format_double(last.pseudo_regret)
         << " R'=" << format_double(last.sample_regret) << " R/g tail mean=" << format_double(ratio_tail.mean)
         << " [" << format_double(ratio_tail.min) << ", " << format_double(ratio_tail.max) << "]\n";

    if (cfg.policy == PolicyKind::kGForcing) {
      const auto rem = forcing_remainder(traj, bounds, cfg.g);
      r["limit"] = bounds.s_delta;
      r["forcing_remainder_final"] = rem.values.back();
      r["forcing_remainder_bounds"] = {0.0, bounds.s_delta};
      plot << diagnostic_csv_rows(st.labels.run_id, std::string(to_string(rem.label)), rem);
      text << "  limit S=" << format_double(bounds.s_delta) << " remainder=" << format_double(rem.values.back())
           << " (predicted within [0, " << format_double(bounds.s_delta) << "])\n";
    } else if (cfg.policy == PolicyKind::kGIsm) {
      const bool unique = inst.k_star() == 1;
      r["limit"] = unique ? json(bounds.k_minus_one) : json(nullptr);
      json arms = json::array();
      for (const auto& s : ism_count_ratio(traj, bounds, cfg.g)) {
        arms.push_back({{"arm", *s.arm + 1}, {"final", s.values.back()}});
        plot << diagnostic_csv_rows(st.labels.run_id,
                                    std::string(to_string(s.label)) + ":arm" + std::to_string(*s.arm + 1), s);
      }
      r["per_arm_count_over_g_final"] = std::move(arms);
      const auto rem = ism_remainder_normalized(traj, bounds, cfg.g);
      r["ism_remainder_normalized_final"] = rem.skipped.back() ? json(nullptr) : json(rem.values.back());
      r["ism_remainder_bounds"] = {bounds.lower_remainder_coeff, bounds.upper_remainder_coeff};
      r["theory_flagged"] = !unique;
      plot << diagnostic_csv_rows(st.labels.run_id, std::string(to_string(rem.label)), rem);
      text << "  limit K-1=" << bounds.k_minus_one << (unique ? "" : " (optimum not unique)")
           << " normalized remainder="
           << (rem.skipped.back() ? std::string("n/a") : format_double(rem.values.back())) << " (predicted within ["
           << format_double(bounds.lower_remainder_coeff) << ", " << format_double(bounds.upper_remainder_coeff)
           << "])\n";
    } else {
      r["limit"] = nullptr;
    }
    if (inst.k_star() >= 2) {
      const auto share = optimal_share_ratio(traj, inst);
      r["optimal_share_final"] = share.values.back();
      plot << diagnostic_csv_rows(st.labels.run_id, std::string(to_string(share.label)), share);
      text << "  optimal share ratio=" << format_double(share.values.back()) << "\n";
    }
    report_runs.push_back(std::move(r));
  }

  // Multiple-optima ordering table: g-ISM runs of the same instance and
  // policy label, paired by seed across g functions.
  struct Key {
    std::string instance, policy;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, std::map<std::string, std::map<std::uint64_t, double>>> shares;
  for (const auto& st : runs) {
    const auto& cfg = st.trajectory.config;
    if (cfg.policy != PolicyKind::kGIsm || cfg.instance.k_star() < 2) continue;
    shares[{st.labels.instance, st.labels.policy}][st.labels.g][cfg.seed] =
        optimal_share_ratio(st.trajectory, cfg.instance).values.back();
  }
  json phase = json::array();
  for (const auto& [key, by_g] : shares) {
    for (auto a = by_g.begin(); a != by_g.end(); ++a) {
      for (auto b = std::next(a); b != by_g.end(); ++b) {
        json per_seed = json::array();
        int wins_a = 0;
        int wins_b = 0;
        int ties = 0;
        for (const auto& [seed, sa] : a->second) {
          auto it = b->second.find(seed);
          if (it == b->second.end()) continue;
          const double sb = it->second;
          (sa > sb ? wins_a : sb > sa ? wins_b : ties) += 1;
          per_seed.push_back({{"seed", seed}, {"share_a", sa}, {"share_b", sb}});
        }
        phase.push_back({{"instance", key.instance}, {"policy", key.policy}, {"g_a", a->first}, {"g_b", b->first},
                         {"pairs", per_seed.size()}, {"wins_a", wins_a}, {"wins_b", wins_b}, {"ties", ties},
                         {"per_seed", std::move(per_seed)}});
        text << "\noptimal-share ordering " << key.instance << "/" << key.policy << ": " << a->first << " wins "
             << wins_a << ", " << b->first << " wins " << wins_b << ", ties " << ties << "\n";
      }
    }
  }

  json report{{"tail_fraction", tail}, {"runs", std::move(report_runs)}, {"phase_change", std::move(phase)}};
  try {
    write_text(output_dir / "report.json", report.dump(1) + "\n");
    write_text(output_dir / "report.txt", text.str());
    write_text(output_dir / "plot_data.csv", plot.str());
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitCheckFailed;
  }
  out << text.str();
  return kExitOk;
}

}  // namespace gforce
