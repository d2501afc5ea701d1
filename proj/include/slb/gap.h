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


// Generalized assignment: jobs go to machines, machine i spends a[i][j] of its
// budget A[i] on job j, and the assignment pays b[i][j] against a global
// budget B. A fractional solution is rounded with the slot-matching
// construction of Shmoys and Tardos: the integral cost never exceeds the
// fractional cost and each machine's time exceeds its fractional time by at
// most the largest a[i][j] among jobs it fractionally holds.

#ifndef SLB_GAP_H_
#define SLB_GAP_H_

#include <span>
#include <string>
#include <vector>

#include "slb/assignment.h"

namespace slb {

struct GapInstance {
  Matrix a;                     // processing times, [machine][job]
  Matrix b;                     // costs, [machine][job]
  std::vector<double> budgets;  // A, one per machine
  double cost_budget = 0.0;     // B

  int num_machines() const { return static_cast<int>(a.size()); }
  int num_jobs() const { return a.empty() ? 0 : static_cast<int>(a[0].size()); }
};

// Throws InvalidArgumentError on shape mismatch, negative or non-finite data.
void ValidateGapInstance(const GapInstance& gap);

// Fractions below this are treated as zero before pouring.
inline constexpr double kGapDustThreshold = 1e-12;

// One edge of the slot/job bipartite graph.
struct SlotEdge {
  int job = 0;
  int slot = 0;
  double cost = 0.0;
};

// Exact minimum-cost matching that covers every job (slots may stay free),
// by successive shortest augmenting paths. Returns slot_of_job. Throws
// InfeasibleError when no job-saturating matching exists.
std::vector<int> MinCostJobMatching(int num_jobs, int num_slots,
                                    std::span<const SlotEdge> edges);

// The slot graph of a fractional solution: machine i gets ceil(sum_j x_ij)
// slots, and its jobs, ordered by a[i][j] descending (ties by job index), are
// poured into them one unit of fraction per slot. An edge joins a slot and a
// job that poured a positive amount into it, with cost b[i][j].
struct SlotGraph {
  std::vector<int> machine_of_slot;
  std::vector<SlotEdge> edges;
  std::vector<double> poured;  // fraction carried by each edge
  int num_slots() const { return static_cast<int>(machine_of_slot.size()); }
};

// Validates `x` like RoundShmoysTardos, then drops dust and pours.
SlotGraph PourIntoSlots(const GapInstance& gap, const FractionalAssignment& x);

// Rounds `x` (columns summing to 1 within 1e-7, cost within B) to an integral
// assignment. Throws InvalidArgumentError when `x` is outside the assignment
// polytope or over the cost budget.
IntegralAssignment RoundShmoysTardos(const GapInstance& gap,
                                     const FractionalAssignment& x);

// A constraint sum_ij coef[i][j] x_ij <= rhs that was folded into the GAP
// rows; used to audit the rounded solution against the original system.
struct LinearRow {
  std::string name;
  Matrix coef;
  double rhs = 0.0;
};

// lhs / rhs for an assignment; 0 when both vanish, +inf for lhs > 0 = rhs.
double RowFactor(const LinearRow& row, const FractionalAssignment& x);

struct GapAudit {
  double fractional_cost = 0.0;
  double integral_cost = 0.0;
  bool cost_ok = false;  // integral <= fractional + 1e-7 and <= B + 1e-7
  std::vector<double> fractional_load;
  std::vector<double> integral_load;
  // max(A_i, fractional load) + max a[i][j] over jobs with x[i][j] > dust.
  std::vector<double> load_bound;
  bool loads_ok = false;
  // integral load / A_i and integral cost / B.
  std::vector<double> machine_factor;
  double cost_factor = 0.0;
  double max_merged_factor = 0.0;
  // One factor per disaggregated row.
  std::vector<std::string> row_names;
  std::vector<double> row_factors;
  double max_row_factor = 0.0;
  bool every_job_assigned_once = false;
};

GapAudit VerifyGapGuarantees(const GapInstance& gap,
                             const FractionalAssignment& fractional,
                             const IntegralAssignment& integral,
                             std::span<const LinearRow> rows = {});

}  // namespace slb

#endif  // SLB_GAP_H_
