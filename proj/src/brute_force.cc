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


#include "slb/brute_force.h"

#include "slb/errors.h"

namespace slb {

BruteForceResult BruteForceOpt(const LbInstance& inst, PNorm p,
                               std::size_t outcome_cap,
                               std::int64_t mc_samples, std::uint64_t seed) {
  ValidateInstance(inst);
  std::int64_t total = 1;
  for (int j = 0; j < inst.n; ++j) {
    total *= inst.m;
    if (total > kBruteForceAssignmentCap) {
      throw LimitExceededError(
          "brute force needs m^n <= 1e6; shrink the instance");
    }
  }
  BruteForceResult best;
  IntegralAssignment current{std::vector<int>(inst.n, 0)};
  bool first = true;
  while (true) {
    const NormEvaluation eval =
        EvaluateAssignment(inst, current, p, outcome_cap, mc_samples, seed);
    if (eval.method != "exact") best.exact = false;
    ++best.assignments_checked;
    if (first || eval.value < best.value - 1e-12 * std::abs(best.value)) {
      best.value = eval.value;
      best.assignment = current;
      first = false;
    }
    int j = inst.n - 1;
    while (j >= 0 && current.machine_of[j] == inst.m - 1) {
      current.machine_of[j] = 0;
      --j;
    }
    if (j < 0) break;
    ++current.machine_of[j];
  }
  return best;
}

}  // namespace slb
