// Copyright 2026 The Authors.
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


#include "cli.h"

#include <chrono>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slb/bounds_suite.h"
#include "slb/brute_force.h"
#include "slb/errors.h"
#include "slb/instance_io.h"
#include "slb/random_instances.h"
#include "slb/stoch_lb.h"
#include "slb/subset_select.h"

namespace slb {
namespace {

void Emit(std::ostream& out, const Json& doc, const std::string& path) {
  if (path.empty()) {
    out << doc.dump(2) << "\n";
  } else {
    WriteJsonFile(path, doc);
  }
}

std::vector<double> ParsePList(const std::string& list) {
  std::vector<double> ps;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw InvalidArgumentError("--p: cannot parse \"" + item + "\"");
    }
    ps.push_back(p);
  }
  if (ps.empty()) throw InvalidArgumentError("--p: empty list");
  return ps;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Stochastic l_p load balancing and subset selection"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string config_path;
  std::string out_path;
  bool timing = false;
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("instance", instance_path, "Instance JSON")->required();
  solve->add_option("--config", config_path, "Solver config JSON");
  solve->add_option("--out", out_path, "Write the report here");
  solve->add_flag("--timing", timing, "Add wall-clock timing to the report");

  std::string assignment_path;
  std::optional<std::int64_t> mc_samples;
  std::uint64_t eval_seed = 1;
  auto* evaluate = app.add_subcommand("evaluate", "E||S||_p of an assignment");
  evaluate->add_option("instance", instance_path, "Instance JSON")->required();
  evaluate->add_option("assignment", assignment_path, "Assignment JSON")
      ->required();
  evaluate->add_option("--mc-samples", mc_samples,
                       "Force Monte Carlo with this many samples");
  evaluate->add_option("--seed", eval_seed, "Monte Carlo seed");

  auto* brute = app.add_subcommand("brute-force", "Exhaustive optimum");
  brute->add_option("instance", instance_path, "Instance JSON")->required();

  int families = 200;
  std::uint64_t bounds_seed = 1;
  std::string p_list = "1.5,2,3,7";
  auto* bounds = app.add_subcommand("verify-bounds",
                                    "Randomized checks of the moment bounds");
  bounds->add_option("--families", families, "Random families per suite");
  bounds->add_option("--seed", bounds_seed, "Seed");
  bounds->add_option("--p", p_list, "Comma-separated exponents");

  std::string region_path;
  auto* subset = app.add_subcommand("subset-select", "p-moment subset selection");
  subset->add_option("items", instance_path, "Items JSON")->required();
  subset->add_option("region", region_path, "Region JSON")->required();

  int gen_m = 2;
  int gen_n = 4;
  std::string gen_p = "2";
  int gen_support = 3;
  double gen_max_value = 10.0;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen-random", "Random instance");
  gen->add_option("--m", gen_m, "Machines");
  gen->add_option("--n", gen_n, "Jobs");
  gen->add_option("--p", gen_p, "Exponent (number or inf)");
  gen->add_option("--support", gen_support, "Largest support size");
  gen->add_option("--max-value", gen_max_value, "Largest job size");
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--out", out_path, "Write the instance here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (solve->parsed()) {
      const auto start = std::chrono::steady_clock::now();
      const InstanceFile file = ParseInstance(ReadJsonFile(instance_path));
      if (config_path.empty()) {
        if (const char* env = std::getenv(kConfigEnvVar); env && *env) {
          config_path = env;
        }
      }
      const SolverConfig cfg = config_path.empty()
                                   ? SolverConfig{}
                                   : ParseConfig(ReadJsonFile(config_path));
      const SolveReport report = Solve(file.instance, file.p, cfg);
      Json doc = SolveReportToJson(report, cfg, file.p);
      if (timing) {
        doc["timing_ms"] = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
      }
      Emit(out, doc, out_path);
      return kExitOk;
    }
    if (evaluate->parsed()) {
      const InstanceFile file = ParseInstance(ReadJsonFile(instance_path));
      const IntegralAssignment a =
          ParseAssignment(ReadJsonFile(assignment_path), file.instance);
      NormEvaluation e;
      if (mc_samples) {
        if (*mc_samples < 2) throw InvalidArgumentError("--mc-samples must be >= 2");
        const McEstimate mc = ExpectedLpNormMc(LoadsOf(file.instance, a),
                                               file.p, *mc_samples, eval_seed);
        e = {"mc", mc.mean, mc.std_error, mc.samples, mc.seed};
      } else {
        e = EvaluateAssignment(file.instance, a, file.p, kDefaultSupportCap,
                               SolverConfig{}.mc_samples, eval_seed);
      }
      Emit(out, Json{{"p", PNormToJson(file.p)}, {"norm", EvaluationToJson(e)}},
           "");
      return kExitOk;
    }
    if (brute->parsed()) {
      const InstanceFile file = ParseInstance(ReadJsonFile(instance_path));
      const BruteForceResult r = BruteForceOpt(file.instance, file.p);
      Emit(out,
           Json{{"p", PNormToJson(file.p)},
                {"assignment", r.assignment.machine_of},
                {"value", r.value},
                {"exact", r.exact},
                {"assignments_checked", r.assignments_checked}},
           "");
      return kExitOk;
    }
    if (bounds->parsed()) {
      BoundsSuiteOptions opt;
      opt.families = families;
      opt.seed = bounds_seed;
      opt.ps = ParsePList(p_list);
      const std::vector<BoundsSuiteResult> results = RunBoundsSuites(opt);
      Json suites = Json::array();
      std::int64_t violations = 0;
      for (const BoundsSuiteResult& r : results) {
        suites.push_back({{"name", r.name},
                          {"checked", r.checked},
                          {"violations", r.violations},
                          {"skipped", r.skipped},
                          {"detail", r.detail}});
        violations += r.violations;
      }
      Emit(out, Json{{"families", families}, {"seed", bounds_seed},
                     {"suites", std::move(suites)},
                     {"violations", violations}},
           "");
      return violations == 0 ? kExitOk : kExitInvalid;
    }
    if (subset->parsed()) {
      const ItemsFile items = ParseItems(ReadJsonFile(instance_path));
      const LinOptOracle oracle = ParseRegion(
          ReadJsonFile(region_path), static_cast<int>(items.items.size()));
      const SelectionReport r = SelectSubset(items.items, items.p, oracle);
      Emit(out,
           Json{{"p", PNormToJson(items.p)},
                {"selection", r.x},
                {"degenerate", r.degenerate},
                {"accepted_guess", r.accepted_guess},
                {"eps_bar", r.eps_bar},
                {"guaranteed_moment", r.guaranteed_moment},
                {"true_moment",
                 [&] {
                   std::vector<DiscreteDist> chosen;
                   for (std::size_t j = 0; j < r.x.size(); ++j) {
                     if (r.x[j]) chosen.push_back(items.items[j]);
                   }
                   return std::pow(SumMomentExact(chosen, items.p),
                                   1.0 / items.p.value());
                 }()},
                {"lower_bracket", r.lower_bracket},
                {"upper_bracket", r.upper_bracket},
                {"oracle_calls", r.oracle_calls},
                {"monotone", r.monotone}},
           "");
      return kExitOk;
    }
    if (gen->parsed()) {
      const PNorm p = ParsePNorm(
          gen_p == "inf" ? Json("inf") : Json(std::stod(gen_p)), "--p");
      const LbInstance inst =
          RandomInstance(gen_m, gen_n, gen_support, gen_max_value, gen_seed);
      Emit(out, InstanceToJson(inst, p), out_path);
      return kExitOk;
    }
  } catch (const LimitExceededError& e) {
    err << "limit: " << e.what() << "\n";
    return kExitLimit;
  } catch (const OverflowError& e) {
    err << "limit: " << e.what() << "\n";
    return kExitLimit;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  err << "error: no subcommand\n";
  return kExitInvalid;
}

}  // namespace slb
