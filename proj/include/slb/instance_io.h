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


// JSON formats.
//
// Instance:   {"m": 2, "n": 3, "p": 2 | "inf",
//              "jobs": [[dist on machine 0, dist on machine 1], ...]}  (n rows)
// Dist:       [[value, prob], ...], probabilities summing to 1 within 1e-9.
// Assignment: [machine of job 0, ...] or {"assignment": [...]}; 0-based.
// Items:      {"p": 2, "items": [dist, ...]}  (subset selection)
// Region:     {"type": "explicit", "sets": [[0, 1, 1], ...]}
//             {"type": "cardinality", "k": 2}
//             {"type": "partition", "part_of": [...], "capacity": [...]}
// Config:     any subset of the SolverConfig field names.
//
// Parse errors are InvalidArgumentError with a JSON-pointer-like path.

#ifndef SLB_INSTANCE_IO_H_
#define SLB_INSTANCE_IO_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "slb/stoch_lb.h"
#include "slb/subset_select.h"

namespace slb {

using Json = nlohmann::json;

// Name of the environment variable holding a default config file path.
inline constexpr const char* kConfigEnvVar = "SLB_CONFIG";

Json ReadJsonFile(const std::string& path);
void WriteJsonFile(const std::string& path, const Json& doc);

DiscreteDist ParseDist(const Json& j, const std::string& where);
Json DistToJson(const DiscreteDist& d);

PNorm ParsePNorm(const Json& j, const std::string& where);
Json PNormToJson(PNorm p);

struct InstanceFile {
  LbInstance instance;
  PNorm p{2.0};
};

InstanceFile ParseInstance(const Json& j);
Json InstanceToJson(const LbInstance& inst, PNorm p);

IntegralAssignment ParseAssignment(const Json& j, const LbInstance& inst);
Json AssignmentToJson(const IntegralAssignment& a);

// Starts from `base` and overrides the fields present; unknown keys are an
// error.
SolverConfig ParseConfig(const Json& j, SolverConfig base = {});
Json ConfigToJson(const SolverConfig& cfg);

struct ItemsFile {
  std::vector<DiscreteDist> items;
  PNorm p{2.0};
};
ItemsFile ParseItems(const Json& j);

LinOptOracle ParseRegion(const Json& j, int n);

Json EvaluationToJson(const NormEvaluation& e);
// Self-contained: echoes the config (with its seed) and p.
Json SolveReportToJson(const SolveReport& r, const SolverConfig& cfg, PNorm p);

}  // namespace slb

#endif  // SLB_INSTANCE_IO_H_
