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

// Exact and Monte Carlo evaluation of moments of sums of independent
// DiscreteDists and of the expected l_p norm of a vector of machine loads.
// Everything here is ground truth for the property tests, so the exact paths
// never approximate: when a support cap is exceeded they throw
// LimitExceededError and the caller must switch to Monte Carlo.

#ifndef SLB_MOMENT_ORACLE_H_
#define SLB_MOMENT_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "slb/dist.h"

namespace slb {

inline constexpr std::size_t kDefaultSupportCap = 1'000'000;

// Jobs assigned to each machine; machine i carries load S_i = sum of its jobs.
struct MachineLoads {
  std::vector<std::vector<DiscreteDist>> per_machine;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(samples)
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

// Distribution of a + b for independent a, b.
DiscreteDist Convolve(const DiscreteDist& a, const DiscreteDist& b,
                      std::size_t support_cap = kDefaultSupportCap);

// Distribution of the sum; the empty sum is the point mass at zero.
DiscreteDist SumDistribution(std::span<const DiscreteDist> ds,
                             std::size_t support_cap = kDefaultSupportCap);

// E S^p for S the sum of independent `ds`.
double SumMomentExact(std::span<const DiscreteDist> ds, PNorm p,
                      std::size_t support_cap = kDefaultSupportCap);

// Pr(X >= threshold).
double TailProbability(const DiscreteDist& d, double threshold);

// ||loads||_p for a deterministic vector (max for p = inf).
double LpNorm(std::span<const double> loads, PNorm p);

// Exact E ||S||_p. Machines are convolved independently and their joint
// outcomes enumerated; throws LimitExceededError if the number of joint
// outcomes exceeds `outcome_cap`.
double ExpectedLpNormExact(const MachineLoads& loads, PNorm p,
                           std::size_t outcome_cap = kDefaultSupportCap);

// Number of joint machine outcomes ExpectedLpNormExact would enumerate, or
// SIZE_MAX if it is larger than `outcome_cap` (or a convolution breaks it).
std::size_t ExactNormOutcomeCount(const MachineLoads& loads,
                                  std::size_t outcome_cap = kDefaultSupportCap);

// Sample mean of ||S||_p over `samples` independent draws (samples >= 2).
// Work is split into a fixed number of chunks with sub-streams derived from
// `seed`, so the result does not depend on the thread count.
McEstimate ExpectedLpNormMc(const MachineLoads& loads, PNorm p,
                            std::int64_t samples, std::uint64_t seed);

// The Latala scale: the eps with sum_j nu_eps(X_j) = 1, found by bisection
// in log eps to residual 1e-10. Throws InvalidArgumentError when every
// distribution is a point mass at zero.
double SolveEpsilonStar(std::span<const DiscreteDist> ds, PNorm p);

struct LatalaBounds {
  double eps_star = 0.0;
  double lower = 0.0;  // (eps*/10)^p
  double upper = 0.0;  // (e eps*)^p
};

// Two-sided estimate of E S^p through eps*.
LatalaBounds ComputeLatalaBounds(std::span<const DiscreteDist> ds, PNorm p);

// `copies` independent machines, each with load distributed as `load`.
struct MachineGroup {
  DiscreteDist load;
  std::int64_t copies = 0;
};

// E ||S||_p for a union of i.i.d. machine groups. Only the counts of machines
// landing on each load atom matter, so the exact path enumerates multinomial
// count vectors (throws LimitExceededError above `outcome_cap`) and the Monte
// Carlo path samples the counts directly, independent of the machine count.
double ExpectedLpNormOfGroupsExact(std::span<const MachineGroup> groups,
                                   PNorm p,
                                   std::size_t outcome_cap = kDefaultSupportCap);
McEstimate ExpectedLpNormOfGroupsMc(std::span<const MachineGroup> groups,
                                    PNorm p, std::int64_t samples,
                                    std::uint64_t seed);

}  // namespace slb

#endif  // SLB_MOMENT_ORACLE_H_
