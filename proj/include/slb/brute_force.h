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


#ifndef SLB_BRUTE_FORCE_H_
#define SLB_BRUTE_FORCE_H_

#include <cstdint>

#include "slb/stoch_lb.h"

namespace slb {

inline constexpr std::int64_t kBruteForceAssignmentCap = 1'000'000;

struct BruteForceResult {
  IntegralAssignment assignment;
  double value = 0.0;
  // False when some assignment exceeded the exact-evaluation cap and was
  // scored by Monte Carlo instead.
  bool exact = true;
  std::int64_t assignments_checked = 0;
};

// Minimizes E ||S||_p over all m^n assignments, visited in lexicographic
// order of (machine of job 0, machine of job 1, ...); the first minimizer
// wins ties (relative 1e-12). Throws LimitExceededError if m^n exceeds
// kBruteForceAssignmentCap.
BruteForceResult BruteForceOpt(const LbInstance& inst, PNorm p,
                               std::size_t outcome_cap = kDefaultSupportCap,
                               std::int64_t mc_samples = 100'000,
                               std::uint64_t seed = 1);

}  // namespace slb

#endif  // SLB_BRUTE_FORCE_H_
