// Copyright 2026 The Tensolve Authors
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

#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tensolve/io.hpp"

namespace {

std::vector<std::int64_t> parse_assignment(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoll(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tensolve: tensor-network solvers for combinatorial problems"};
  app.require_subcommand(1);

  tensolve::io::RunOptions options;
  double tau = 0.0;
  bool no_escalate = false;
  int layer_limit = 0;
  std::string assignment_csv;

  for (const std::string name : {"solve", "count", "verify", "oracle", "bench"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("spec", options.spec_path, "problem file (JSON)")->required();
    sub->add_option("--tau", tau, "imaginary-time constant");
    sub->add_flag("--humbucker", options.config.humbucker,
                  "phase vectors instead of plus vectors");
    sub->add_flag("--no-escalate", no_escalate, "disable tau escalation");
    sub->add_option("--layer-limit", layer_limit,
                    "max filter layers per iteration (supported families)");
    sub->add_flag("--check", options.check, "cross-run the enumeration oracle");
    sub->add_option("--oracle-budget", options.oracle_budget,
                    "state budget for oracle runs");
    sub->add_option("--seed", options.seed, "seed for randomized harnesses");
    sub->add_flag("--plan-debug", options.plan_debug,
                  "dump the network graph description to stderr");
    if (name == "verify")
      sub->add_option("--assignment", assignment_csv, "comma-separated values")
          ->required();
  }

  CLI11_PARSE(app, argc, argv);

  options.command = app.get_subcommands().front()->get_name();
  if (tau > 0.0) options.config.tau = tau;
  if (no_escalate) options.config.escalate = false;
  if (layer_limit > 0) options.config.layer_limit = layer_limit;
  if (!assignment_csv.empty()) options.assignment = parse_assignment(assignment_csv);

  const tensolve::io::RunOutcome outcome = tensolve::io::run(options);
  if (!outcome.log.empty()) std::cerr << outcome.log;
  std::cout << outcome.report.dump(2) << "\n";
  return outcome.exit_code;
}
