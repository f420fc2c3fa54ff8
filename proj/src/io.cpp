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

#include "gforce/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gforce/format.hpp"

namespace gforce {

using nlohmann::json;

json g_to_json(const GFunction& g) {
  json j;
  j["kind"] = std::string(to_string(g.kind()));
  j["scale"] = g.scale();
  switch (g.kind()) {
    case GFunction::Kind::kPower:
      j["exponent"] = g.exponent();
      j["shift"] = g.shift();
      break;
    case GFunction::Kind::kCustomTable: {
      json knots = json::array();
      for (const auto& k : g.knots()) knots.push_back({k.t, k.value});
      j["knots"] = knots;
      break;
    }
    default: j["shift"] = g.shift(); break;
  }
  return j;
}

GFunction g_from_json(const json& j) {
  const auto kind = parse_g_kind(j.at("kind").get<std::string>());
  if (!kind) throw std::runtime_error("unknown g kind in JSON");
  const double scale = j.at("scale").get<double>();
  switch (*kind) {
    case GFunction::Kind::kLog: return GFunction::log(scale, j.at("shift").get<double>());
    case GFunction::Kind::kIteratedLog: return GFunction::iterated_log(scale, j.at("shift").get<double>());
    case GFunction::Kind::kPower:
      return GFunction::power(j.at("exponent").get<double>(), scale, j.at("shift").get<double>());
    case GFunction::Kind::kSqrtLnLn: return GFunction::sqrt_lnln(scale, j.at("shift").get<double>());
    case GFunction::Kind::kCustomTable: {
      std::vector<GFunction::Knot> knots;
      for (const auto& k : j.at("knots")) knots.push_back({k.at(0).get<double>(), k.at(1).get<double>()});
      return GFunction::custom_table(std::move(knots), scale);
    }
  }
  throw std::runtime_error("unreachable g kind");
}

json config_to_json(const RunConfig& config) {
  json arms = json::array();
  for (const auto& a : config.instance.arms()) arms.push_back(a.describe());
  json j;
  j["arms"] = arms;
  j["policy"] = std::string(to_string(config.policy));
  j["g"] = g_to_json(config.g);
  j["tie"] = std::string(to_string(config.tie));
  j["horizon"] = config.horizon;
  j["seed"] = config.seed;
  j["checkpoints"] = resolved_checkpoints(config);
  return j;
}

RunConfig config_from_json(const json& j) {
  std::vector<ArmSpec> arms;
  for (const auto& a : j.at("arms")) arms.push_back(parse_arm(a.get<std::string>()));
  RunConfig c{BanditInstance(std::move(arms))};
  const auto policy = parse_policy_kind(j.at("policy").get<std::string>());
  const auto tie = parse_tie_rule(j.at("tie").get<std::string>());
  if (!policy || !tie) throw std::runtime_error("unknown policy or tie rule in JSON");
  c.policy = *policy;
  c.tie = *tie;
  c.g = g_from_json(j.at("g"));
  c.horizon = j.at("horizon").get<std::int64_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.checkpoints = j.at("checkpoints").get<std::vector<std::int64_t>>();
  return c;
}

std::string digest_hex(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

json trajectory_to_json(const RunLabels& labels, const Trajectory& traj) {
  json records = json::array();
  for (const auto& r : traj.records) {
    records.push_back({{"n", r.n},
                       {"counts", r.counts},
                       {"pseudo_regret", r.pseudo_regret},
                       {"sample_regret", r.sample_regret},
                       {"means", r.means}});
  }
  json j;
  j["run_id"] = labels.run_id;
  j["labels"] = {{"group", labels.group}, {"instance", labels.instance}, {"g", labels.g}, {"policy", labels.policy}};
  j["digest"] = digest_hex(traj.digest);
  j["config"] = config_to_json(traj.config);
  j["records"] = std::move(records);
  if (!traj.decisions.empty()) j["decisions"] = traj.decisions;
  return j;
}

StoredTrajectory trajectory_from_json(const json& j) {
  try {
    RunLabels labels;
    labels.run_id = j.at("run_id").get<std::string>();
    const auto& l = j.at("labels");
    labels.group = l.at("group").get<std::string>();
    labels.instance = l.at("instance").get<std::string>();
    labels.g = l.at("g").get<std::string>();
    labels.policy = l.at("policy").get<std::string>();

    Trajectory traj{config_from_json(j.at("config")), 0, {}, {}};
    traj.digest = std::stoull(j.at("digest").get<std::string>(), nullptr, 16);
    for (const auto& r : j.at("records")) {
      CheckpointRecord rec;
      rec.n = r.at("n").get<std::int64_t>();
      rec.counts = r.at("counts").get<std::vector<std::int64_t>>();
      rec.pseudo_regret = r.at("pseudo_regret").get<double>();
      rec.sample_regret = r.at("sample_regret").get<double>();
      rec.means = r.at("means").get<std::vector<double>>();
      if (rec.counts.size() != traj.config.instance.size() || rec.means.size() != rec.counts.size()) {
        throw std::runtime_error("record width does not match K");
      }
      traj.records.push_back(std::move(rec));
    }
    if (j.contains("decisions")) traj.decisions = j.at("decisions").get<std::vector<std::uint32_t>>();
    return {std::move(labels), std::move(traj)};
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed trajectory JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("malformed trajectory JSON: ") + e.what());
  }
}

std::string trajectory_csv_header(std::size_t arms) {
  std::string h = "run_id,seed,policy,g_kind,n";
  for (std::size_t i = 1; i <= arms; ++i) h += ",T_" + std::to_string(i);
  h += ",pseudo_regret,sample_regret";
  return h;
}

std::string trajectory_to_csv(const RunLabels& labels, const Trajectory& traj) {
  const auto& cfg = traj.config;
  const std::string g_kind = uses_g(cfg.policy) ? std::string(to_string(cfg.g.kind())) : "-";
  std::ostringstream os;
  os << trajectory_csv_header(cfg.instance.size()) << "\n";
  for (const auto& r : traj.records) {
    os << labels.run_id << "," << cfg.seed << "," << to_string(cfg.policy) << "," << g_kind << "," << r.n;
    for (auto c : r.counts) os << "," << c;
    os << "," << format_double(r.pseudo_regret) << "," << format_double(r.sample_regret) << "\n";
  }
  return os.str();
}

std::string diagnostic_csv_header() { return "run_id,label,n,value"; }

std::string diagnostic_csv_rows(const std::string& run_id, const std::string& label, const DiagnosticSeries& series) {
  std::ostringstream os;
  for (std::size_t j = 0; j < series.size(); ++j) {
    if (!series.skipped.empty() && series.skipped[j]) continue;
    os << run_id << "," << label << "," << series.n[j] << "," << format_double(series.values[j]) << "\n";
  }
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace gforce
