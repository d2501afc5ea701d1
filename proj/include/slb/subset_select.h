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


// Stochastic subset selection: pick x in a region of {0,1}^n maximizing the
// p-moment of sum_j V_j x_j, given only a linear-optimization oracle over the
// region. A guess G of the optimum is accepted when the oracle finds x with
// sum_j nu_{eps}(V_j) x_j >= 1 at eps = G / e^a, where a >= 1 is the oracle's
// approximation factor; every accepted x then has p-moment at least eps/10.

#ifndef SLB_SUBSET_SELECT_H_
#define SLB_SUBSET_SELECT_H_

#include <functional>
#include <span>
#include <vector>

#include "slb/dist.h"

namespace slb {

using Selection = std::vector<int>;  // 0/1 per item

struct LinOptOracle {
  // <c, returned> >= (1/approximation) * max over the region.
  double approximation = 1.0;
  std::function<Selection(std::span<const double> c)> maximize;
};

// Scans the list; first maximizer wins. Throws on an empty list or on
// vectors that are not 0/1 of a common length.
LinOptOracle ExplicitRegionOracle(std::vector<Selection> region);

// Top-k items by c (ties to the lower index); zero-weight items are still
// taken so that exactly k are selected. Throws unless 0 <= k <= n.
LinOptOracle CardinalityOracle(int n, int k);

// rank(S) for S given as a 0/1 vector.
using RankOracle = std::function<int(const Selection&)>;

// Greedy over items by decreasing c (ties to the lower index), adding an item
// when the rank grows by one. Throws LimitExceededError when the rank oracle
// misbehaves (rank change outside {0, 1}).
LinOptOracle MatroidOracle(int n, RankOracle rank);

// Partition matroid: item j lies in part part_of[j] and at most capacity[q]
// items of part q may be chosen.
RankOracle PartitionMatroidRank(std::vector<int> part_of,
                                std::vector<int> capacity);

struct SelectionConfig {
  double rel_tol = 1e-3;
  int max_iters = 200;
};

struct SelectionReport {
  Selection x;
  bool degenerate = false;  // every item is identically zero
  double accepted_guess = 0.0;       // G
  double eps_bar = 0.0;              // G / e^a
  double guaranteed_moment = 0.0;    // eps_bar / 10, lower bound on (E S^p)^(1/p)
  double lower_bracket = 0.0;
  double upper_bracket = 0.0;
  int oracle_calls = 0;
  bool monotone = true;  // no accepted guess above a rejected one
};

SelectionReport SelectSubset(std::span<const DiscreteDist> items, PNorm p,
                             const LinOptOracle& oracle,
                             const SelectionConfig& cfg = {});

}  // namespace slb

#endif  // SLB_SUBSET_SELECT_H_
