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


// Randomized checks of the moment inequalities the solver relies on, each
// evaluated with the exact (or, for very many machines, Monte Carlo) oracles.
// Backs the `verify-bounds` command.

#ifndef SLB_BOUNDS_SUITE_H_
#define SLB_BOUNDS_SUITE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "slb/moment_oracle.h"
#include "slb/rng.h"

namespace slb {

struct BoundsSuiteOptions {
  int families = 200;
  std::uint64_t seed = 1;
  std::vector<double> ps = {1.5, 2.0, 3.0, 7.0};
  // Converse-Jensen families are scanned over alpha0 = 2^-1, ..., 2^-k with
  // this as the smallest value.
  double alpha0 = 1.0 / 1024.0;
  std::int64_t mc_samples = 400;
};

struct BoundsSuiteResult {
  std::string name;
  std::int64_t checked = 0;
  std::int64_t violations = 0;
  std::int64_t skipped = 0;  // families failing a lemma's precondition
  std::string detail;
};

std::vector<BoundsSuiteResult> RunBoundsSuites(const BoundsSuiteOptions& options);

// A union of i.i.d. machine groups meeting the converse-Jensen hypotheses:
// every job is supported in [0, 1], E S_i^p <= 1 on each machine, and
// (sum_i E S_i^p)^(1/p) >= 1/alpha0. Returns false (and leaves `groups` empty)
// when the random draw breaks E S_i^p <= 1.
bool MakeConverseJensenFamily(SplitMix64& rng, PNorm p, double alpha0,
                              std::vector<MachineGroup>& groups,
                              double& moment_sum);

// Lower confidence value (mean - 4 stderr, or the exact value) of E||S||_p for
// the groups, compared against (1/4) moment_sum^(1/p).
struct ConverseJensenCheck {
  bool passed = false;
  double norm_lower = 0.0;
  double quarter_root = 0.0;
};
ConverseJensenCheck CheckConverseJensen(const std::vector<MachineGroup>& groups,
                                        double moment_sum, PNorm p,
                                        std::int64_t mc_samples,
                                        std::uint64_t seed);

}  // namespace slb

#endif  // SLB_BOUNDS_SUITE_H_
