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


// Stochastic l_p load balancing on unrelated machines. Given a guess T of the
// optimum, each job is split at alpha*T into a truncated and an exceptional
// part and a relaxation is written over fractional assignments:
//
//   exceptional mass:  sum_ij E J''_ij x_ij <= 2T
//   multi-scale:       sum_i z_i <= 3, where for every grid value v
//                      z_i >= (1/v)(sum_j nuhat_{T/v^(1/p)}(J'_ij/44) x_ij - 1)
//   makespan control:  for every K with |K| = k,
//                      sum_{i in K} sum_j beta_k(J'_ij/T) x_ij <= C k
//                      (separated, never materialized)
//   coarse moment:     sum_ij E (J_ij/4T)^p x_ij <= 1
//   assignment:        sum_i x_ij = 1
//
// A feasible point fixes one scale v_bar_i and one l_bar_i per machine; the
// resulting per-machine system is folded into a GAP instance and rounded.
// The smallest feasible T is found by bisection.

#ifndef SLB_STOCH_LB_H_
#define SLB_STOCH_LB_H_

#include <cstdint>
#include <string>
#include <vector>

#include "slb/assignment.h"
#include "slb/dist.h"
#include "slb/gap.h"
#include "slb/lp.h"
#include "slb/moment_oracle.h"

namespace slb {

struct LbInstance {
  int m = 0;
  int n = 0;
  // jobs[i][j]: size of job j when run on machine i.
  std::vector<std::vector<DiscreteDist>> jobs;

  friend bool operator==(const LbInstance&, const LbInstance&) = default;
};

// Throws InvalidArgumentError if the shape is inconsistent.
void ValidateInstance(const LbInstance& inst);

MachineLoads LoadsOf(const LbInstance& inst, const IntegralAssignment& a);

struct NormEvaluation {
  std::string method;  // "exact" or "mc"
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

// E ||S||_p of an integral assignment: exact when the joint outcome count is
// within `outcome_cap`, otherwise Monte Carlo.
NormEvaluation EvaluateAssignment(const LbInstance& inst,
                                  const IntegralAssignment& a, PNorm p,
                                  std::size_t outcome_cap,
                                  std::int64_t mc_samples, std::uint64_t seed);

struct SolverConfig {
  double alpha = 0.1;  // truncation ratio; 1/alpha must be an integer
  double C = 8.0;      // makespan-control slack
  double v_grid_ratio = 2.0;
  double bisection_rel_tol = 0.05;
  int max_bisection_iters = 40;
  int max_rounds = 200;  // separation rounds per LP
  int max_bracket_expansions = 20;
  std::int64_t mc_samples = 200'000;
  std::uint64_t seed = 20260101;
  double ratio_guard = 20.0;
  std::size_t outcome_cap = kDefaultSupportCap;
  // Right-hand side of the per-machine makespan row of the reduced program:
  // C when true, 1 otherwise. Only C keeps the starting solution feasible.
  bool beta_rhs_uses_c = true;
};

// Throws InvalidArgumentError for out-of-range settings.
void ValidateConfig(const SolverConfig& cfg);

// Divisor applied to truncated parts in the multi-scale rows.
inline constexpr double kMultiScaleShrink = 44.0;

// max(ceil((1/alpha)^p), 100).
double VMin(const SolverConfig& cfg, PNorm p);

// Geometric grid on [v_min, max(m, v_min)] with ratio cfg.v_grid_ratio, both
// ends included, rounded to integers and deduplicated.
std::vector<double> VGrid(int m, const SolverConfig& cfg, PNorm p);

// Each job on each machine split at alpha*T, with the functionals the
// programs consume.
struct SplitJobs {
  double T = 0.0;
  Matrix exceptional_mean;  // E J''
  Matrix coarse_moment;     // E (J / 4T)^p
  std::vector<std::vector<DiscreteDist>> truncated;  // J' / T, values <= alpha
};

SplitJobs SplitAt(const LbInstance& inst, double T, const SolverConfig& cfg,
                  PNorm p);

// sum_j nuhat_{T/v^(1/p)}(J'_ij / 44) x_ij for machine i.
double MultiScaleLoad(const SplitJobs& split, const FractionalAssignment& x,
                      int i, double v, PNorm p);

// Variable layout of the starting program: x_ij at i*n + j, z_i at m*n + i.
struct StartingLp {
  LinearProgram lp;
  SplitJobs split;
  std::vector<double> v_grid;
  // beta[k-1][i][j] = beta_k(J'_ij / T), k = 1..m.
  std::vector<Matrix> beta;
  int m = 0;
  int n = 0;
  double C = 8.0;
};

// sum_j beta_l(J'_ij / T) x_ij for machine i, l in [1, m].
double EffectiveLoad(const StartingLp& start, const FractionalAssignment& x,
                     int i, int ell);

StartingLp BuildStartingLp(const LbInstance& inst, double T,
                           const SolverConfig& cfg, PNorm p);

// Makespan-control cuts violated by x (one per violated cardinality k, for
// the top-k machines), with the tolerance 1e-7.
std::vector<LpConstraint> LinfSeparation(const StartingLp& start,
                                         const FractionalAssignment& x);

// x_ij clamped to [0, 1] with each column rescaled to sum to 1.
FractionalAssignment ExtractAssignment(const LpSolution& sol, int m, int n);

struct StartingLpResult {
  bool feasible = false;
  LpStatus status = LpStatus::kIterationLimit;
  FractionalAssignment x;
  std::vector<double> z;
  int rounds = 0;
  int cuts = 0;
};

StartingLpResult SolveStartingLp(const StartingLp& start,
                                 const SolverConfig& cfg);

struct ReducedParams {
  std::vector<double> v_bar;
  std::vector<int> l_bar;
  std::vector<bool> in_I;
};

// Fills v_bar and in_I.
void ComputeVBar(const StartingLp& start, const FractionalAssignment& x,
                 PNorm p, ReducedParams& params);
// Fills l_bar. Throws InfeasibleError if some machine fails already at l = 1.
void ComputeLBar(const StartingLp& start, const FractionalAssignment& x,
                 ReducedParams& params);

struct ReducedLp {
  LinearProgram lp;  // variables x_ij at i*n + j
  // The reduced system row by row, in natural units, for audits.
  std::vector<LinearRow> rows;
};

ReducedLp BuildReducedLp(const StartingLp& start, const ReducedParams& params,
                         const SolverConfig& cfg, PNorm p);

GapInstance MergeToGap(const StartingLp& start, const ReducedParams& params,
                       const SolverConfig& cfg, PNorm p);

// Each job to argmin_i E Y_ij, ties to the lowest index.
IntegralAssignment GreedyP1(const LbInstance& inst);

struct BisectionProbe {
  double T = 0.0;
  bool feasible = false;
  int rounds = 0;
};

struct SolveReport {
  IntegralAssignment assignment;
  NormEvaluation norm;
  std::string path;  // "greedy-p1", "degenerate-zero" or "lp-rounding"
  double lower_bracket = 0.0;
  double final_T = 0.0;
  int bracket_expansions = 0;
  std::vector<BisectionProbe> probes;
  bool non_monotone = false;
  std::vector<double> v_grid;
  ReducedParams params;
  double sum_inverse_v_bar = 0.0;
  bool l_bar_counts_ok = true;  // |{i : l_bar_i = l}| <= l for every l
  double xbar_reduced_violation = 0.0;
  FractionalAssignment xbar;     // starting-program solution at final T
  FractionalAssignment rounded;  // the reduced-program vertex that was rounded
  GapInstance gap;
  GapAudit audit;
  int lp_rounds = 0;
  int lp_cuts = 0;
};

// Full pipeline. Requires finite p; p = 1 is solved exactly by GreedyP1.
SolveReport Solve(const LbInstance& inst, PNorm p, const SolverConfig& cfg);

}  // namespace slb

#endif  // SLB_STOCH_LB_H_
