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


#include "slb/subset_select.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "slb/errors.h"

namespace slb {

LinOptOracle ExplicitRegionOracle(std::vector<Selection> region) {
  if (region.empty()) throw InvalidArgumentError("empty feasible region");
  const std::size_t n = region.front().size();
  for (const Selection& s : region) {
    if (s.size() != n) {
      throw InvalidArgumentError("region vectors have different lengths");
    }
    for (int v : s) {
      if (v != 0 && v != 1) throw InvalidArgumentError("region is not 0/1");
    }
  }
  LinOptOracle oracle;
  oracle.maximize = [region = std::move(region)](std::span<const double> c) {
    if (c.size() != region.front().size()) {
      throw InvalidArgumentError("objective length differs from region");
    }
    std::size_t best = 0;
    double best_value = -1.0;
    for (std::size_t k = 0; k < region.size(); ++k) {
      double value = 0.0;
      for (std::size_t j = 0; j < c.size(); ++j) value += c[j] * region[k][j];
      if (value > best_value) {
        best_value = value;
        best = k;
      }
    }
    return region[best];
  };
  return oracle;
}

namespace {

std::vector<int> ByDecreasingWeight(std::span<const double> c) {
  std::vector<int> order(c.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return c[a] > c[b]; });
  return order;
}

}  // namespace

LinOptOracle CardinalityOracle(int n, int k) {
  if (n < 1 || k < 0 || k > n) {
    throw InvalidArgumentError("cardinality oracle needs 0 <= k <= n");
  }
  LinOptOracle oracle;
  oracle.maximize = [n, k](std::span<const double> c) {
    if (static_cast<int>(c.size()) != n) {
      throw InvalidArgumentError("objective length differs from n");
    }
    Selection x(n, 0);
    const std::vector<int> order = ByDecreasingWeight(c);
    for (int r = 0; r < k; ++r) x[order[r]] = 1;
    return x;
  };
  return oracle;
}

LinOptOracle MatroidOracle(int n, RankOracle rank) {
  if (n < 1) throw InvalidArgumentError("matroid oracle needs n >= 1");
  LinOptOracle oracle;
  oracle.maximize = [n, rank = std::move(rank)](std::span<const double> c) {
    if (static_cast<int>(c.size()) != n) {
      throw InvalidArgumentError("objective length differs from n");
    }
    Selection x(n, 0);
    int current = rank(x);
    if (current != 0) throw LimitExceededError("rank of the empty set != 0");
    for (int j : ByDecreasingWeight(c)) {
      x[j] = 1;
      const int next = rank(x);
      if (next == current + 1) {
        current = next;
      } else if (next == current) {
        x[j] = 0;
      } else {
        throw LimitExceededError("rank oracle is not a matroid rank");
      }
    }
    return x;
  };
  return oracle;
}

RankOracle PartitionMatroidRank(std::vector<int> part_of,
                                std::vector<int> capacity) {
  for (int q : part_of) {
    if (q < 0 || q >= static_cast<int>(capacity.size())) {
      throw InvalidArgumentError("item assigned to an unknown part");
    }
  }
  for (int cap : capacity) {
    if (cap < 0) throw InvalidArgumentError("negative part capacity");
  }
  return [part_of = std::move(part_of),
          capacity = std::move(capacity)](const Selection& s) {
    std::vector<int> used(capacity.size(), 0);
    for (std::size_t j = 0; j < s.size() && j < part_of.size(); ++j) {
      if (s[j]) ++used[part_of[j]];
    }
    int r = 0;
    for (std::size_t q = 0; q < capacity.size(); ++q) {
      r += std::min(used[q], capacity[q]);
    }
    return r;
  };
}

SelectionReport SelectSubset(std::span<const DiscreteDist> items, PNorm p,
                             const LinOptOracle& oracle,
                             const SelectionConfig& cfg) {
  if (items.empty()) throw InvalidArgumentError("no items");
  if (p.is_infinite()) throw InvalidArgumentError("subset selection needs finite p");
  if (!(oracle.approximation >= 1.0)) {
    throw InvalidArgumentError("oracle approximation factor must be >= 1");
  }
  const std::size_t n = items.size();
  SelectionReport report;

  std::vector<double> c(n, 0.0);
  if (std::all_of(items.begin(), items.end(),
                  [](const DiscreteDist& d) { return d.IsZero(); })) {
    report.degenerate = true;
    report.x = oracle.maximize(c);
    report.oracle_calls = 1;
    return report;
  }

  const double shrink = std::exp(oracle.approximation);
  Selection best_x;
  double best_g = 0.0;
  double lowest_rejected = std::numeric_limits<double>::infinity();
  auto attempt = [&](double g) {
    const double eps = g / shrink;
    for (std::size_t j = 0; j < n; ++j) c[j] = LFunction(items[j], eps, p);
    Selection x = oracle.maximize(c);
    ++report.oracle_calls;
    if (x.size() != n) throw InvalidArgumentError("oracle returned wrong length");
    double mass = 0.0;
    for (std::size_t j = 0; j < n; ++j) mass += c[j] * x[j];
    const bool accepted = mass >= 1.0;
    if (accepted) {
      if (g > lowest_rejected) report.monotone = false;
      if (g > best_g) {
        best_g = g;
        best_x = std::move(x);
      }
    } else {
      lowest_rejected = std::min(lowest_rejected, g);
      if (g < best_g) report.monotone = false;
    }
    return accepted;
  };

  double lo = 0.0;
  double hi = 0.0;
  for (const DiscreteDist& d : items) {
    const double moment = std::pow(RawMoment(d, p), 1.0 / p.value());
    lo = std::max(lo, moment);
    hi += moment;
  }
  report.lower_bracket = lo;
  report.upper_bracket = hi;

  if (attempt(hi)) {
    lo = hi;
  } else {
    int halvings = 0;
    while (!attempt(lo)) {
      hi = lo;
      lo /= 2.0;
      // Each halving raises nu of a nonzero item by about ln 2, so a long run
      // of rejections means the oracle only offers items that are zero.
      if (++halvings > 200) {
        throw InfeasibleError(
            "no guess accepted; the region may contain only the zero vector");
      }
    }
    for (int it = 0; it < cfg.max_iters && hi > lo * (1.0 + cfg.rel_tol); ++it) {
      const double mid = std::sqrt(lo * hi);
      if (attempt(mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  report.x = best_x;
  report.accepted_guess = best_g;
  report.eps_bar = best_g / shrink;
  report.guaranteed_moment = report.eps_bar / 10.0;
  return report;
}

}  // namespace slb
