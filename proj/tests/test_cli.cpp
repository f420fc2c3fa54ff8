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

#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "gforce/commands.hpp"
#include "gforce/format.hpp"

namespace gforce {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("gforce_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

const char* kMinimal = R"(
[instance two]
arms = bernoulli(0.9), bernoulli(0.5)

[g root]
kind = power
exponent = 0.5

[policy forcing]
kind = g-forcing

[run main]
instances = two
g = root
policies = forcing
seeds = 0
horizon = 1000
)";

CliOptions options_for(const fs::path& config, const fs::path& out) {
  CliOptions o;
  o.config = config;
  o.out = out;
  return o;
}

std::size_t count_files(const fs::path& dir, const std::string& ext) {
  std::size_t n = 0;
  if (!fs::exists(dir)) return 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.path().extension() == ext;
  return n;
}

TEST(ExperimentParse, MinimalFile) {
  const auto ex = parse_experiment(kMinimal);
  ASSERT_EQ(ex.runs.size(), 1u);
  EXPECT_EQ(ex.runs[0].horizon, 1000);
  EXPECT_EQ(ex.g_functions.at("root"), GFunction::power(0.5));
  const auto plan = plan_runs(ex);
  ASSERT_EQ(plan.size(), 1u);
  EXPECT_EQ(plan[0].run_id, "main.two.root.forcing.s0");
}

TEST(ExperimentParse, ErrorsNameTheLine) {
  std::string text = kMinimal;
  text.replace(text.find("g = root"), 8, "g = nope");
  try {
    parse_experiment(text);
    FAIL() << "expected ExperimentError";
  } catch (const ExperimentError& e) {
    EXPECT_EQ(e.line(), 14);
    EXPECT_NE(std::string(e.what()).find("line 14"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("nope"), std::string::npos);
  }
  EXPECT_THROW(parse_experiment("[instance a]\narms = bernoulli(2)\n"), ExperimentError);
  EXPECT_THROW(parse_experiment("[bogus x]\n"), ExperimentError);
  EXPECT_THROW(parse_experiment("key = value\n"), ExperimentError);
}

TEST(ExperimentParse, RejectsDuplicateSeedsAndShortHorizon) {
  std::string dup = kMinimal;
  dup.replace(dup.find("seeds = 0"), 9, "seeds = 0,1,0");
  EXPECT_THROW(parse_experiment(dup), ExperimentError);
  std::string shorter = kMinimal;
  shorter.replace(shorter.find("horizon = 1000"), 14, "horizon = 1");
  EXPECT_THROW(parse_experiment(shorter), ExperimentError);
}

TEST(ExperimentParse, SeedRangesAndFractions) {
  EXPECT_EQ(parse_seed_range("0..3"), (std::vector<std::uint64_t>{0, 1, 2, 3}));
  EXPECT_EQ(parse_seed_range("1,4, 9"), (std::vector<std::uint64_t>{1, 4, 9}));
  EXPECT_EQ(parse_seed_range("0..1,10"), (std::vector<std::uint64_t>{0, 1, 10}));
  EXPECT_THROW(parse_seed_range("3..1"), std::invalid_argument);
  EXPECT_THROW(parse_seed_range("x"), std::invalid_argument);
  EXPECT_DOUBLE_EQ(parse_pass_fraction("29/32"), 29.0 / 32.0);
  EXPECT_DOUBLE_EQ(parse_pass_fraction("0.5"), 0.5);
  EXPECT_THROW(parse_pass_fraction("33/32"), std::invalid_argument);
}

TEST(ExperimentParse, BaselinesAreNotCrossedWithG) {
  const auto ex = parse_experiment(R"(
[instance two]
arms = point-mass(1), point-mass(0)
[g a]
kind = log
[g b]
kind = power
[policy rr]
kind = round-robin
[policy ism]
kind = g-ism
[run r]
instances = two
g = a, b
policies = rr, ism
seeds = 0..1
horizon = 10
)");
  const auto plan = plan_runs(ex);
  EXPECT_EQ(plan.size(), 6u);
  std::set<std::string> ids;
  for (const auto& p : plan) ids.insert(p.run_id);
  EXPECT_EQ(ids.size(), plan.size());
}

TEST(CmdRun, MinimalConfigWritesOneJsonAndOneCsv) {
  TempDir dir;
  write_text(dir.path() / "a.ini", kMinimal);
  std::ostringstream out, err;
  EXPECT_EQ(cmd_run(options_for(dir.path() / "a.ini", dir.path() / "out"), out, err), kExitOk) << err.str();
  EXPECT_EQ(count_files(dir.path() / "out" / "trajectories", ".json"), 1u);
  EXPECT_EQ(count_files(dir.path() / "out" / "trajectories", ".csv"), 1u);
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "manifest.json"));
  EXPECT_NE(out.str().find("main.two.root.forcing.s0"), std::string::npos);
}

TEST(CmdRun, UndefinedGIsAConfigError) {
  TempDir dir;
  std::string text = kMinimal;
  text.replace(text.find("g = root"), 8, "g = nope");
  write_text(dir.path() / "a.ini", text);
  std::ostringstream out, err;
  EXPECT_EQ(cmd_run(options_for(dir.path() / "a.ini", dir.path() / "out"), out, err), kExitConfigError);
  EXPECT_NE(err.str().find("line 14"), std::string::npos);
}

TEST(CmdRun, MissingConfigIsAConfigError) {
  TempDir dir;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_run(options_for(dir.path() / "none.ini", dir.path() / "out"), out, err), kExitConfigError);
}

TEST(CmdRun, SeedOverrideExpandsRuns) {
  TempDir dir;
  write_text(dir.path() / "a.ini", kMinimal);
  auto o = options_for(dir.path() / "a.ini", dir.path() / "out");
  o.seeds = "0..31";
  o.horizon = 200;
  o.workers = 4;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_run(o, out, err), kExitOk) << err.str();
  EXPECT_EQ(count_files(dir.path() / "out" / "trajectories", ".json"), 32u);
}

TEST(CmdRun, RepeatedRunsGiveIdenticalCsv) {
  TempDir dir;
  write_text(dir.path() / "a.ini", kMinimal);
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(options_for(dir.path() / "a.ini", dir.path() / "o1"), out, err), kExitOk);
  ASSERT_EQ(cmd_run(options_for(dir.path() / "a.ini", dir.path() / "o2"), out, err), kExitOk);
  const std::string name = "trajectories/main.two.root.forcing.s0.csv";
  EXPECT_EQ(read_text(dir.path() / "o1" / name), read_text(dir.path() / "o2" / name));
}

const char* kDeterministicSuite = R"(
[instance det]
arms = point-mass(1), point-mass(0.5), point-mass(0)
[g ln]
kind = log
[policy forcing]
kind = g-forcing
[run det]
instances = det
g = ln
policies = forcing
seeds = 0
horizon = 20000
[check sandwich]
type = forcing-sandwich
run = det
)";

TEST(CmdCheck, DeterministicSuitePasses) {
  TempDir dir;
  write_text(dir.path() / "a.ini", kDeterministicSuite);
  const auto o = options_for(dir.path() / "a.ini", dir.path() / "out");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(o, out, err), kExitOk);
  EXPECT_EQ(cmd_check(o, out, err), kExitOk) << out.str() << err.str();
  const auto verdicts = nlohmann::json::parse(read_text(dir.path() / "out" / "verdicts.json"));
  EXPECT_TRUE(verdicts.at("all_passed").get<bool>());
  EXPECT_EQ(verdicts.at("checks").at(0).at("parameters").at("delta").get<double>(), kDefaultDelta);
}

TEST(CmdCheck, InjectedViolationNamesCheckpoint) {
  TempDir dir;
  write_text(dir.path() / "a.ini", kDeterministicSuite);
  const auto o = options_for(dir.path() / "a.ini", dir.path() / "out");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(o, out, err), kExitOk);
  const auto path = dir.path() / "out" / "trajectories" / "det.det.ln.forcing.s0.json";
  auto j = nlohmann::json::parse(read_text(path));
  auto& rec = j["records"].back();
  const auto n = rec["n"].get<std::int64_t>();
  rec["counts"][1] = rec["counts"][1].get<std::int64_t>() + 5;
  rec["counts"][0] = rec["counts"][0].get<std::int64_t>() - 5;
  write_text(path, j.dump());
  std::ostringstream cout_;
  EXPECT_EQ(cmd_check(o, cout_, err), kExitCheckFailed);
  EXPECT_NE(cout_.str().find("n=" + std::to_string(n)), std::string::npos) << cout_.str();
  const auto verdicts = nlohmann::json::parse(read_text(dir.path() / "out" / "verdicts.json"));
  EXPECT_EQ(verdicts.at("checks").at(0).at("failures").at(0).at("n").get<std::int64_t>(), n);
}

TEST(CmdCheck, MissingTrajectoriesExitThree) {
  TempDir dir;
  write_text(dir.path() / "a.ini", kDeterministicSuite);
  std::ostringstream out, err;
  EXPECT_EQ(cmd_check(options_for(dir.path() / "a.ini", dir.path() / "out"), out, err), kExitMissingInputs);
}

TEST(CmdCheck, StaleTrajectoriesExitThree) {
  TempDir dir;
  write_text(dir.path() / "a.ini", kDeterministicSuite);
  auto o = options_for(dir.path() / "a.ini", dir.path() / "out");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(o, out, err), kExitOk);
  o.horizon = 30'000;
  EXPECT_EQ(cmd_check(o, out, err), kExitMissingInputs);
}

TEST(CmdCheck, EmptyChecksWarnAndPass) {
  TempDir dir;
  write_text(dir.path() / "a.ini", kMinimal);
  std::ostringstream out, err;
  EXPECT_EQ(cmd_check(options_for(dir.path() / "a.ini", dir.path() / "out"), out, err), kExitOk);
  EXPECT_NE(err.str().find("warning"), std::string::npos);
}

TEST(CmdCheck, BadDeltaIsAConfigError) {
  TempDir dir;
  write_text(dir.path() / "a.ini", kDeterministicSuite);
  auto o = options_for(dir.path() / "a.ini", dir.path() / "out");
  o.delta = 0.7;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_check(o, out, err), kExitConfigError);
}

TEST(CmdReport, NoResultsExitThree) {
  TempDir dir;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_report(dir.path(), CliOptions{}, out, err), kExitMissingInputs);
}

TEST(CmdReport, ListsEveryRunOnceAndMatchesCsv) {
  TempDir dir;
  write_text(dir.path() / "a.ini", kMinimal);
  auto o = options_for(dir.path() / "a.ini", dir.path() / "out");
  o.seeds = "0..3";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(o, out, err), kExitOk);
  ASSERT_EQ(cmd_report(dir.path() / "out", o, out, err), kExitOk) << err.str();
  const auto report = nlohmann::json::parse(read_text(dir.path() / "out" / "report.json"));
  std::map<std::string, int> seen;
  for (const auto& r : report.at("runs")) ++seen[r.at("run_id").get<std::string>()];
  EXPECT_EQ(seen.size(), 4u);
  for (const auto& [id, k] : seen) EXPECT_EQ(k, 1) << id;

  // Recompute R/g at the final checkpoint from the raw CSV.
  for (const auto& r : report.at("runs")) {
    const auto id = r.at("run_id").get<std::string>();
    std::istringstream csv(read_text(dir.path() / "out" / "trajectories" / (id + ".csv")));
    std::string line, last;
    while (std::getline(csv, line)) last = line;
    std::vector<std::string> cols;
    std::stringstream ls(last);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    const auto n = std::stoll(cols[4]);
    const double regret = std::stod(cols[cols.size() - 2]);
    EXPECT_DOUBLE_EQ(r.at("regret_over_g_final").get<double>(), regret / eval_g(GFunction::power(0.5), n));
  }
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "plot_data.csv"));
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "report.txt"));
}

TEST(CmdReport, PhaseOrderingTableHasWinCounts) {
  TempDir dir;
  write_text(dir.path() / "a.ini", R"(
[instance twin]
arms = gaussian(1,0.5), gaussian(1,0.5), gaussian(0.5,0.5)
[g fast]
kind = power
exponent = 0.8
[g slow]
kind = log
[policy ism]
kind = g-ism
tie = seeded-uniform
[run phase]
instances = twin
g = fast, slow
policies = ism
seeds = 0..2
horizon = 2000
)");
  const auto o = options_for(dir.path() / "a.ini", dir.path() / "out");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(o, out, err), kExitOk);
  ASSERT_EQ(cmd_report(dir.path() / "out", o, out, err), kExitOk);
  const auto report = nlohmann::json::parse(read_text(dir.path() / "out" / "report.json"));
  ASSERT_EQ(report.at("phase_change").size(), 1u);
  const auto& row = report.at("phase_change").at(0);
  EXPECT_EQ(row.at("pairs").get<int>(), 3);
  EXPECT_EQ(row.at("wins_a").get<int>() + row.at("wins_b").get<int>() + row.at("ties").get<int>(), 3);
  EXPECT_EQ(row.at("per_seed").size(), 3u);
}

}  // namespace
}  // namespace gforce
