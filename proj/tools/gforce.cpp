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

// gforce run|check|report: config-driven bandit sweeps.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gforce/commands.hpp"

namespace {

void add_common(CLI::App* cmd, gforce::CliOptions& o, std::string& out) {
  cmd->add_option("--out", out, "Output directory (overrides [output] dir)");
  cmd->add_option("--tail-fraction", o.tail_fraction, "Fraction of checkpoints used for tail estimates")
      ->check(CLI::Range(0.0, 1.0));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forced-exploration bandit simulator"};
  app.require_subcommand(1);

  gforce::CliOptions o;
  std::string config;
  std::string out;

  auto* run = app.add_subcommand("run", "Execute every planned run and store trajectories");
  auto* check = app.add_subcommand("check", "Evaluate configured checks against stored trajectories");
  auto* report = app.add_subcommand("report", "Summarize stored trajectories");

  for (auto* cmd : {run, check}) {
    cmd->add_option("--config", config, "Experiment file")->required();
    add_common(cmd, o, out);
    cmd->add_option("--seeds", o.seeds, "Seed list such as 0..31 or 1,4,9");
    cmd->add_option("--horizon", o.horizon, "Horizon for every run group");
  }
  run->add_option("--workers", o.workers, "Parallel workers")->check(CLI::PositiveNumber);
  check->add_option("--delta", o.delta, "Sandwich margin, in (0, 0.5)");
  check->add_option("--burn-in", o.burn_in, "Burn-in fraction of the horizon for the sandwich check");
  report->add_option("--out", out, "Results directory")->required();
  report->add_option("--tail-fraction", o.tail_fraction, "Fraction of checkpoints used for tail estimates")
      ->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return gforce::kExitConfigError;
  }

  o.config = config;
  if (!out.empty()) o.out = out;
  try {
    if (*run) return gforce::cmd_run(o, std::cout, std::cerr);
    if (*check) return gforce::cmd_check(o, std::cout, std::cerr);
    return gforce::cmd_report(out, o, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gforce::kExitCheckFailed;
  }
}
