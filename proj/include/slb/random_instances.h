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


// Seeded generators for distributions, families and instances. The same seed
// gives the same output on every platform.

#ifndef SLB_RANDOM_INSTANCES_H_
#define SLB_RANDOM_INSTANCES_H_

#include <cstdint>
#include <vector>

#include "slb/dist.h"
#include "slb/rng.h"
#include "slb/stoch_lb.h"

namespace slb {

// 1..max_support atoms with values uniform in [0, max_value] (a zero atom
// is included with probability 0.3) and random probabilities.
DiscreteDist RandomDist(SplitMix64& rng, int max_support, double max_value);

// 1..max_count independent distributions.
std::vector<DiscreteDist> RandomFamily(SplitMix64& rng, int max_count,
                                       int max_support, double max_value);

LbInstance RandomInstance(int m, int n, int max_support, double max_value,
                          std::uint64_t seed);

}  // namespace slb

#endif  // SLB_RANDOM_INSTANCES_H_
