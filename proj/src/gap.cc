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


#include "slb/gap.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "slb/errors.h"

namespace slb {

void ValidateGapInstance(const GapInstance& gap) {
  const int m = gap.num_machines();
  const int n = gap.num_jobs();
  if (m < 1) throw InvalidArgumentError("GAP instance needs a machine");
  if (static_cast<int>(gap.b.size()) != m ||
      static_cast<int>(gap.budgets.size()) != m) {
    throw InvalidArgumentError("GAP instance: inconsistent machine count");
  }
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(gap.a[i].size()) != n ||
        static_cast<int>(gap.b[i].size()) != n) {
      throw InvalidArgumentError("GAP instance: ragged matrix");
    }
    for (int j = 0; j < n; ++j) {
      if (!(gap.a[i][j] >= 0.0) || !(gap.b[i][j] >= 0.0) ||
          !std::isfinite(gap.a[i][j]) || !std::isfinite(gap.b[i][j])) {
        throw InvalidArgumentError("GAP instance: bad entry at [" +
                                   std::to_string(i) + "][" +
                                   std::to_string(j) + "]");
      }
    }
    if (!(gap.budgets[i] >= 0.0) || !std::isfinite(gap.budgets[i])) {
      throw InvalidArgumentError("GAP instance: bad machine budget");
    }
  }
  if (!(gap.cost_budget >= 0.0) || !std::isfinite(gap.cost_budget)) {
    throw InvalidArgumentError("GAP instance: bad cost budget");
  }
}

std::vector<int> MinCostJobMatching(int num_jobs, int num_slots,
                                    std::span<const SlotEdge> edges) {
  constexpr double kInfDist = std::numeric_limits<double>::infinity();
  constexpr double kRelaxEps = 1e-13;
  std::vector<std::vector<std::pair<int, double>>> adj(num_jobs);
  for (const SlotEdge& e : edges) {
    if (e.job < 0 || e.job >= num_jobs || e.slot < 0 || e.slot >= num_slots) {
      throw InvalidArgumentError("matching edge out of range");
    }
    adj[e.job].push_back({e.slot, e.cost});
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
  }

  std::vector<int> slot_of_job(num_jobs, -1);
  std::vector<int> job_of_slot(num_slots, -1);
  std::vector<double> matched_cost(num_jobs, 0.0);

  // Nodes: jobs [0, n), slots [n, n + s). Residual arcs: job -> slot for
  // unmatched edges (cost c), slot -> its matched job (cost -c).
  const int total = num_jobs + num_slots;
  std::vector<double> dist(total);
  std::vector<int> parent(total);
  std::vector<double> parent_cost(total);
  std::vector<bool> queued(total);

  for (int source = 0; source < num_jobs; ++source) {
    std::fill(dist.begin(), dist.end(), kInfDist);
    std::fill(parent.begin(), parent.end(), -1);
    std::fill(queued.begin(), queued.end(), false);
    std::deque<int> queue;
    dist[source] = 0.0;
    queue.push_back(source);
    queued[source] = true;
    std::int64_t relaxations = 0;
    const std::int64_t relax_cap =
        static_cast<std::int64_t>(total) * (edges.size() + total) + 16;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      queued[u] = false;
      if (u < num_jobs) {
        for (const auto& [slot, cost] : adj[u]) {
          if (slot_of_job[u] == slot) continue;
          const int v = num_jobs + slot;
          if (dist[u] + cost < dist[v] - kRelaxEps) {
            dist[v] = dist[u] + cost;
            parent[v] = u;
            parent_cost[v] = cost;
            if (!queued[v]) {
              queue.push_back(v);
              queued[v] = true;
            }
          }
        }
      } else {
        const int job = job_of_slot[u - num_jobs];
        if (job < 0) continue;
        const double w = -matched_cost[job];
        if (dist[u] + w < dist[job] - kRelaxEps) {
          dist[job] = dist[u] + w;
          parent[job] = u;
          if (!queued[job]) {
            queue.push_back(job);
            queued[job] = true;
          }
        }
      }
      if (++relaxations > relax_cap) {
        throw LimitExceededError("matching: negative cycle in residual graph");
      }
    }
    int best = -1;
    for (int s = 0; s < num_slots; ++s) {
      if (job_of_slot[s] >= 0) continue;
      const double d = dist[num_jobs + s];
      if (d < kInfDist && (best < 0 || d < dist[num_jobs + best] - kRelaxEps)) {
        best = s;
      }
    }
    if (best < 0) {
      throw InfeasibleError("no job-saturating matching: job " +
                            std::to_string(source) + " cannot be placed");
    }
    // Augment: walk slot <- job <- slot <- ... <- source.
    int v = num_jobs + best;
    while (v != source) {
      const int job = parent[v];
      const int slot = v - num_jobs;
      slot_of_job[job] = slot;
      job_of_slot[slot] = job;
      matched_cost[job] = parent_cost[v];
      if (job == source) break;
      v = parent[job];
    }
  }
  return slot_of_job;
}

namespace {

double Cost(const GapInstance& gap, const FractionalAssignment& x) {
  double c = 0.0;
  for (int i = 0; i < gap.num_machines(); ++i) {
    for (int j = 0; j < gap.num_jobs(); ++j) c += gap.b[i][j] * x.x[i][j];
  }
  return c;
}

}  // namespace

SlotGraph PourIntoSlots(const GapInstance& gap, const FractionalAssignment& x) {
  ValidateGapInstance(gap);
  const int m = gap.num_machines();
  const int n = gap.num_jobs();
  if (x.num_machines() != m || x.num_jobs() != n) {
    throw InvalidArgumentError("fractional solution has the wrong shape");
  }
  if (AssignmentPolytopeViolation(x) > 1e-7) {
    throw InvalidArgumentError(
        "fractional solution is outside the assignment polytope");
  }
  if (Cost(gap, x) > gap.cost_budget + 1e-7 * std::max(1.0, gap.cost_budget)) {
    throw InvalidArgumentError("fractional solution exceeds the cost budget");
  }

  // Drop dust and renormalize each column.
  Matrix y = x.x;
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (int i = 0; i < m; ++i) {
      if (y[i][j] < kGapDustThreshold) y[i][j] = 0.0;
      col += y[i][j];
    }
    for (int i = 0; i < m; ++i) y[i][j] /= col;
  }

  SlotGraph graph;
  std::vector<int> order(n);
  for (int i = 0; i < m; ++i) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int l, int r) {
      return gap.a[i][l] > gap.a[i][r];
    });
    double total = 0.0;
    for (int j = 0; j < n; ++j) total += y[i][j];
    if (total <= 0.0) continue;
    const int slots = std::max(1, static_cast<int>(std::ceil(total - 1e-9)));
    const int first = graph.num_slots();
    graph.machine_of_slot.insert(graph.machine_of_slot.end(), slots, i);
    int k = 0;
    double room = 1.0;
    for (int j : order) {
      double f = y[i][j];
      while (f > 0.0) {
        // The last slot absorbs round-off beyond the nominal capacity.
        const bool last = k == slots - 1;
        const double put = last ? f : std::min(f, room);
        graph.edges.push_back({j, first + k, gap.b[i][j]});
        graph.poured.push_back(put);
        f -= put;
        room -= put;
        if (!last && room <= 1e-12) {
          ++k;
          room = 1.0;
          if (f <= 1e-12) f = 0.0;
        }
      }
    }
  }
  return graph;
}

IntegralAssignment RoundShmoysTardos(const GapInstance& gap,
                                     const FractionalAssignment& x) {
  const SlotGraph graph = PourIntoSlots(gap, x);
  const std::vector<int> slot_of_job =
      MinCostJobMatching(gap.num_jobs(), graph.num_slots(), graph.edges);
  IntegralAssignment out;
  out.machine_of.resize(gap.num_jobs());
  for (int j = 0; j < gap.num_jobs(); ++j) {
    out.machine_of[j] = graph.machine_of_slot[slot_of_job[j]];
  }
  return out;
}

double RowFactor(const LinearRow& row, const FractionalAssignment& x) {
  double lhs = 0.0;
  for (std::size_t i = 0; i < row.coef.size(); ++i) {
    for (std::size_t j = 0; j < row.coef[i].size(); ++j) {
      lhs += row.coef[i][j] * x.x[i][j];
    }
  }
  if (row.rhs > 0.0) return lhs / row.rhs;
  return lhs > 1e-15 ? std::numeric_limits<double>::infinity() : 0.0;
}

GapAudit VerifyGapGuarantees(const GapInstance& gap,
                             const FractionalAssignment& fractional,
                             const IntegralAssignment& integral,
                             std::span<const LinearRow> rows) {
  const int m = gap.num_machines();
  const int n = gap.num_jobs();
  GapAudit audit;
  audit.every_job_assigned_once =
      static_cast<int>(integral.machine_of.size()) == n &&
      std::all_of(integral.machine_of.begin(), integral.machine_of.end(),
                  [m](int i) { return i >= 0 && i < m; });
  if (!audit.every_job_assigned_once) return audit;
  const FractionalAssignment xi = ToFractional(integral, m);

  audit.fractional_cost = Cost(gap, fractional);
  audit.integral_cost = Cost(gap, xi);
  audit.cost_ok = audit.integral_cost <= audit.fractional_cost + 1e-7 &&
                  audit.integral_cost <= gap.cost_budget + 1e-7;
  audit.cost_factor = gap.cost_budget > 0.0
                          ? audit.integral_cost / gap.cost_budget
                          : (audit.integral_cost > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  audit.max_merged_factor = audit.cost_factor;

  audit.loads_ok = true;
  for (int i = 0; i < m; ++i) {
    double frac = 0.0;
    double integ = 0.0;
    double amax = 0.0;
    for (int j = 0; j < n; ++j) {
      frac += gap.a[i][j] * fractional.x[i][j];
      integ += gap.a[i][j] * xi.x[i][j];
      if (fractional.x[i][j] > kGapDustThreshold) {
        amax = std::max(amax, gap.a[i][j]);
      }
    }
    const double bound = std::max(gap.budgets[i], frac) + amax;
    audit.fractional_load.push_back(frac);
    audit.integral_load.push_back(integ);
    audit.load_bound.push_back(bound);
    if (integ > bound + 1e-7) audit.loads_ok = false;
    const double factor =
        gap.budgets[i] > 0.0 ? integ / gap.budgets[i]
                             : (integ > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    audit.machine_factor.push_back(factor);
    audit.max_merged_factor = std::max(audit.max_merged_factor, factor);
  }

  for (const LinearRow& row : rows) {
    audit.row_names.push_back(row.name);
    const double f = RowFactor(row, xi);
    audit.row_factors.push_back(f);
    audit.max_row_factor = std::max(audit.max_row_factor, f);
  }
  return audit;
}

}  // namespace slb
