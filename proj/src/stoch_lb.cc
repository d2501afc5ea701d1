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


#include "slb/stoch_lb.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "slb/errors.h"

namespace slb {

void ValidateInstance(const LbInstance& inst) {
  if (inst.m < 1 || inst.n < 1) {
    throw InvalidArgumentError("instance needs m >= 1 and n >= 1");
  }
  if (static_cast<int>(inst.jobs.size()) != inst.m) {
    throw InvalidArgumentError("instance: jobs has the wrong machine count");
  }
  for (const auto& row : inst.jobs) {
    if (static_cast<int>(row.size()) != inst.n) {
      throw InvalidArgumentError("instance: jobs has the wrong job count");
    }
  }
}

MachineLoads LoadsOf(const LbInstance& inst, const IntegralAssignment& a) {
  if (static_cast<int>(a.machine_of.size()) != inst.n) {
    throw InvalidArgumentError("assignment length differs from job count");
  }
  MachineLoads loads;
  loads.per_machine.resize(inst.m);
  for (int j = 0; j < inst.n; ++j) {
    const int i = a.machine_of[j];
    if (i < 0 || i >= inst.m) {
      throw InvalidArgumentError("job " + std::to_string(j) +
                                 " assigned to machine out of range");
    }
    loads.per_machine[i].push_back(inst.jobs[i][j]);
  }
  return loads;
}

NormEvaluation EvaluateAssignment(const LbInstance& inst,
                                  const IntegralAssignment& a, PNorm p,
                                  std::size_t outcome_cap,
                                  std::int64_t mc_samples, std::uint64_t seed) {
  const MachineLoads loads = LoadsOf(inst, a);
  NormEvaluation out;
  if (ExactNormOutcomeCount(loads, outcome_cap) <= outcome_cap) {
    out.method = "exact";
    out.value = ExpectedLpNormExact(loads, p, outcome_cap);
    return out;
  }
  const McEstimate mc = ExpectedLpNormMc(loads, p, mc_samples, seed);
  out.method = "mc";
  out.value = mc.mean;
  out.std_error = mc.std_error;
  out.samples = mc.samples;
  out.seed = mc.seed;
  return out;
}

void ValidateConfig(const SolverConfig& cfg) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw InvalidArgumentError("alpha must lie in (0, 1)");
  }
  const double inv = 1.0 / cfg.alpha;
  if (std::abs(inv - std::round(inv)) > 1e-9 * inv) {
    throw InvalidArgumentError("1/alpha must be an integer");
  }
  if (!(cfg.C > 0.0)) throw InvalidArgumentError("C must be positive");
  if (!(cfg.v_grid_ratio > 1.0)) {
    throw InvalidArgumentError("v_grid_ratio must exceed 1");
  }
  if (!(cfg.bisection_rel_tol > 0.0)) {
    throw InvalidArgumentError("bisection_rel_tol must be positive");
  }
  if (cfg.max_bisection_iters < 1 || cfg.max_rounds < 1 ||
      cfg.max_bracket_expansions < 0) {
    throw InvalidArgumentError("iteration limits must be positive");
  }
  if (cfg.mc_samples < 2) throw InvalidArgumentError("mc_samples must be >= 2");
  if (!(cfg.ratio_guard > 0.0)) {
    throw InvalidArgumentError("ratio_guard must be positive");
  }
  if (cfg.outcome_cap < 1) throw InvalidArgumentError("outcome_cap must be >= 1");
}

double VMin(const SolverConfig& cfg, PNorm p) {
  const double raw = std::pow(1.0 / cfg.alpha, p.value());
  // Absorb pow() round-off so that 10^2 does not become 101.
  return std::max(std::ceil(raw * (1.0 - 1e-12)), 100.0);
}

std::vector<double> VGrid(int m, const SolverConfig& cfg, PNorm p) {
  const double v_min = VMin(cfg, p);
  const double top = std::max(static_cast<double>(m), v_min);
  std::vector<double> grid;
  for (double v = v_min; v < top; v *= cfg.v_grid_ratio) {
    grid.push_back(std::round(v));
  }
  grid.push_back(top);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

SplitJobs SplitAt(const LbInstance& inst, double T, const SolverConfig& cfg,
                  PNorm p) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw InvalidArgumentError("T must be positive and finite");
  }
  SplitJobs split;
  split.T = T;
  split.exceptional_mean.assign(inst.m, std::vector<double>(inst.n));
  split.coarse_moment.assign(inst.m, std::vector<double>(inst.n));
  split.truncated.assign(inst.m, std::vector<DiscreteDist>(inst.n));
  for (int i = 0; i < inst.m; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      const DiscreteDist& job = inst.jobs[i][j];
      auto [low, high] = TruncateSplit(job, cfg.alpha * T);
      split.exceptional_mean[i][j] = Expectation(high);
      split.coarse_moment[i][j] = RawMoment(Scale(job, 1.0 / (4.0 * T)), p);
      split.truncated[i][j] = Scale(low, 1.0 / T);
    }
  }
  return split;
}

namespace {

// nuhat_{T/v^(1/p)}(J'/44) = nuhat_{44/v^(1/p)}(J'/T).
double MultiScaleCoef(const DiscreteDist& truncated_over_t, double v, PNorm p) {
  const double eps = kMultiScaleShrink / std::pow(v, 1.0 / p.value());
  return CappedLFunction(truncated_over_t, eps, p);
}

int XIndex(int n, int i, int j) { return i * n + j; }

}  // namespace

double MultiScaleLoad(const SplitJobs& split, const FractionalAssignment& x,
                      int i, double v, PNorm p) {
  double total = 0.0;
  for (std::size_t j = 0; j < split.truncated[i].size(); ++j) {
    if (x.x[i][j] <= 0.0) continue;
    total += MultiScaleCoef(split.truncated[i][j], v, p) * x.x[i][j];
  }
  return total;
}

double EffectiveLoad(const StartingLp& start, const FractionalAssignment& x,
                     int i, int ell) {
  const Matrix& beta = start.beta.at(ell - 1);
  double total = 0.0;
  for (int j = 0; j < start.n; ++j) total += beta[i][j] * x.x[i][j];
  return total;
}

StartingLp BuildStartingLp(const LbInstance& inst, double T,
                           const SolverConfig& cfg, PNorm p) {
  ValidateInstance(inst);
  if (p.is_infinite()) {
    throw InvalidArgumentError("the starting program needs a finite p");
  }
  StartingLp start;
  start.m = inst.m;
  start.n = inst.n;
  start.C = cfg.C;
  start.split = SplitAt(inst, T, cfg, p);
  start.v_grid = VGrid(inst.m, cfg, p);
  const int m = inst.m;
  const int n = inst.n;
  const double v_min = start.v_grid.front();

  LinearProgram& lp = start.lp;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      lp.AddVariable("x_" + std::to_string(i) + "_" + std::to_string(j), 0.0,
                     1.0);
    }
  }
  for (int i = 0; i < m; ++i) {
    lp.AddVariable("z_" + std::to_string(i), -1.0 / v_min, 3.0);
  }

  LpConstraint exceptional{"exceptional", {}, Relation::kLessEqual, 1.0};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      exceptional.terms.push_back(
          {XIndex(n, i, j), start.split.exceptional_mean[i][j] / (2.0 * T)});
    }
  }
  lp.AddConstraint(std::move(exceptional));

  LpConstraint z_total{"multiscale_total", {}, Relation::kLessEqual, 3.0};
  for (int i = 0; i < m; ++i) {
    for (double v : start.v_grid) {
      LpConstraint row{"multiscale_" + std::to_string(i) + "_v" +
                           std::to_string(static_cast<long long>(v)),
                       {},
                       Relation::kLessEqual,
                       1.0 / v};
      for (int j = 0; j < n; ++j) {
        row.terms.push_back(
            {XIndex(n, i, j),
             MultiScaleCoef(start.split.truncated[i][j], v, p) / v});
      }
      row.terms.push_back({m * n + i, -1.0});
      lp.AddConstraint(std::move(row));
    }
    z_total.terms.push_back({m * n + i, 1.0});
  }
  lp.AddConstraint(std::move(z_total));

  LpConstraint coarse{"coarse_moment", {}, Relation::kLessEqual, 1.0};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      coarse.terms.push_back({XIndex(n, i, j), start.split.coarse_moment[i][j]});
    }
  }
  lp.AddConstraint(std::move(coarse));

  for (int j = 0; j < n; ++j) {
    LpConstraint row{"assign_" + std::to_string(j), {}, Relation::kEqual, 1.0};
    for (int i = 0; i < m; ++i) row.terms.push_back({XIndex(n, i, j), 1.0});
    lp.AddConstraint(std::move(row));
  }
  lp.SetObjective(ObjectiveSense::kFeasibility);

  start.beta.assign(m, Matrix(m, std::vector<double>(n)));
  for (int k = 1; k <= m; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        start.beta[k - 1][i][j] = EffectiveSize(start.split.truncated[i][j], k);
      }
    }
  }
  return start;
}

std::vector<LpConstraint> LinfSeparation(const StartingLp& start,
                                         const FractionalAssignment& x) {
  const int m = start.m;
  const int n = start.n;
  std::vector<LpConstraint> cuts;
  std::vector<double> t(m);
  std::vector<int> order(m);
  for (int k = 1; k <= m; ++k) {
    for (int i = 0; i < m; ++i) t[i] = EffectiveLoad(start, x, i, k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return t[a] > t[b]; });
    double top = 0.0;
    for (int r = 0; r < k; ++r) top += t[order[r]];
    if (top <= start.C * k + 1e-7) continue;
    std::vector<int> members(order.begin(), order.begin() + k);
    std::sort(members.begin(), members.end());
    LpConstraint cut{"linf_k" + std::to_string(k), {}, Relation::kLessEqual,
                     start.C * k};
    for (int i : members) {
      cut.name += "_" + std::to_string(i);
      for (int j = 0; j < n; ++j) {
        cut.terms.push_back({XIndex(n, i, j), start.beta[k - 1][i][j]});
      }
    }
    cuts.push_back(std::move(cut));
  }
  return cuts;
}

FractionalAssignment ExtractAssignment(const LpSolution& sol, int m, int n) {
  FractionalAssignment x{Matrix(m, std::vector<double>(n, 0.0))};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      x.x[i][j] = std::clamp(sol.values[XIndex(n, i, j)], 0.0, 1.0);
    }
  }
  // Remove simplex round-off from the column sums.
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (int i = 0; i < m; ++i) col += x.x[i][j];
    if (col > 0.0) {
      for (int i = 0; i < m; ++i) x.x[i][j] /= col;
    }
  }
  return x;
}

StartingLpResult SolveStartingLp(const StartingLp& start,
                                 const SolverConfig& cfg) {
  const SeparationOracle oracle = [&start](const LpSolution& sol) {
    return LinfSeparation(start, ExtractAssignment(sol, start.m, start.n));
  };
  const SeparationResult sep =
      SolveWithSeparation(start.lp, oracle, cfg.max_rounds);
  StartingLpResult out;
  out.status = sep.solution.status;
  out.rounds = sep.rounds;
  out.cuts = static_cast<int>(sep.added_cuts.size());
  switch (sep.solution.status) {
    case LpStatus::kOptimal:
      out.feasible = true;
      out.x = ExtractAssignment(sep.solution, start.m, start.n);
      out.z.assign(sep.solution.values.begin() + start.m * start.n,
                   sep.solution.values.end());
      return out;
    case LpStatus::kInfeasible:
      return out;
    case LpStatus::kRoundLimit:
      throw LimitExceededError("starting program: separation round limit");
    default:
      throw LimitExceededError(std::string("starting program: simplex ") +
                               ToString(sep.solution.status));
  }
}

void ComputeVBar(const StartingLp& start, const FractionalAssignment& x,
                 PNorm p, ReducedParams& params) {
  params.v_bar.assign(start.m, start.v_grid.front());
  params.in_I.assign(start.m, false);
  for (int i = 0; i < start.m; ++i) {
    // The load is nondecreasing in v; scan from the top.
    for (auto it = start.v_grid.rbegin(); it != start.v_grid.rend(); ++it) {
      if (MultiScaleLoad(start.split, x, i, *it, p) <= 2.0) {
        params.v_bar[i] = *it;
        params.in_I[i] = true;
        break;
      }
    }
  }
}

void ComputeLBar(const StartingLp& start, const FractionalAssignment& x,
                 ReducedParams& params) {
  params.l_bar.assign(start.m, 0);
  for (int i = 0; i < start.m; ++i) {
    int best = 0;
    for (int ell = 1; ell <= start.m; ++ell) {
      if (EffectiveLoad(start, x, i, ell) > start.C + 1e-7) break;
      best = ell;
    }
    if (best == 0) {
      throw InfeasibleError("machine " + std::to_string(i) +
                            " violates the makespan rows already at l = 1");
    }
    params.l_bar[i] = best;
  }
}

namespace {

double MakespanRhs(const SolverConfig& cfg) {
  return cfg.beta_rhs_uses_c ? cfg.C : 1.0;
}

}  // namespace

ReducedLp BuildReducedLp(const StartingLp& start, const ReducedParams& params,
                         const SolverConfig& cfg, PNorm p) {
  const int m = start.m;
  const int n = start.n;
  const double T = start.split.T;
  ReducedLp red;
  const Matrix zero(m, std::vector<double>(n, 0.0));

  LinearRow exceptional{"exceptional", zero, 2.0 * T};
  LinearRow coarse{"coarse_moment", zero, 1.0};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      exceptional.coef[i][j] = start.split.exceptional_mean[i][j];
      coarse.coef[i][j] = start.split.coarse_moment[i][j];
    }
  }
  red.rows.push_back(exceptional);
  for (int i = 0; i < m; ++i) {
    if (!params.in_I[i]) continue;
    LinearRow row{"multiscale_" + std::to_string(i), zero, 2.0};
    for (int j = 0; j < n; ++j) {
      row.coef[i][j] =
          MultiScaleCoef(start.split.truncated[i][j], params.v_bar[i], p);
    }
    red.rows.push_back(std::move(row));
  }
  for (int i = 0; i < m; ++i) {
    LinearRow row{"makespan_" + std::to_string(i), zero, MakespanRhs(cfg)};
    for (int j = 0; j < n; ++j) {
      row.coef[i][j] = start.beta[params.l_bar[i] - 1][i][j];
    }
    red.rows.push_back(std::move(row));
  }
  red.rows.push_back(coarse);

  LinearProgram& lp = red.lp;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      lp.AddVariable("x_" + std::to_string(i) + "_" + std::to_string(j), 0.0,
                     1.0);
    }
  }
  for (const LinearRow& row : red.rows) {
    // Divide by the rhs so every row reads "<= 1".
    LpConstraint c{row.name, {}, Relation::kLessEqual, 1.0};
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        c.terms.push_back({XIndex(n, i, j), row.coef[i][j] / row.rhs});
      }
    }
    lp.AddConstraint(std::move(c));
  }
  for (int j = 0; j < n; ++j) {
    LpConstraint row{"assign_" + std::to_string(j), {}, Relation::kEqual, 1.0};
    for (int i = 0; i < m; ++i) row.terms.push_back({XIndex(n, i, j), 1.0});
    lp.AddConstraint(std::move(row));
  }
  // Minimizing the merged cost picks a vertex, which the rounding prefers.
  const GapInstance gap = MergeToGap(start, params, cfg, p);
  std::vector<LpTerm> objective;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      objective.push_back({XIndex(n, i, j), gap.b[i][j]});
    }
  }
  lp.SetObjective(ObjectiveSense::kMinimize, std::move(objective));
  return red;
}

GapInstance MergeToGap(const StartingLp& start, const ReducedParams& params,
                       const SolverConfig& cfg, PNorm p) {
  const int m = start.m;
  const int n = start.n;
  const double T = start.split.T;
  const double makespan_rhs = MakespanRhs(cfg);
  GapInstance gap;
  gap.a.assign(m, std::vector<double>(n));
  gap.b.assign(m, std::vector<double>(n));
  gap.budgets.assign(m, 0.0);
  gap.cost_budget = 2.0;
  for (int i = 0; i < m; ++i) {
    gap.budgets[i] = params.in_I[i] ? 2.0 : 1.0;
    for (int j = 0; j < n; ++j) {
      gap.b[i][j] = start.split.exceptional_mean[i][j] / (2.0 * T) +
                    start.split.coarse_moment[i][j];
      double a = start.beta[params.l_bar[i] - 1][i][j] / makespan_rhs;
      if (params.in_I[i]) {
        a += 0.5 * MultiScaleCoef(start.split.truncated[i][j],
                                  params.v_bar[i], p);
      }
      gap.a[i][j] = a;
    }
  }
  return gap;
}

IntegralAssignment GreedyP1(const LbInstance& inst) {
  ValidateInstance(inst);
  IntegralAssignment out;
  out.machine_of.resize(inst.n);
  for (int j = 0; j < inst.n; ++j) {
    int best = 0;
    double best_mean = Expectation(inst.jobs[0][j]);
    for (int i = 1; i < inst.m; ++i) {
      const double mean = Expectation(inst.jobs[i][j]);
      if (mean < best_mean) {
        best = i;
        best_mean = mean;
      }
    }
    out.machine_of[j] = best;
  }
  return out;
}

namespace {

std::vector<double> Flatten(const FractionalAssignment& x) {
  std::vector<double> v;
  for (const auto& row : x.x) v.insert(v.end(), row.begin(), row.end());
  return v;
}

}  // namespace

SolveReport Solve(const LbInstance& inst, PNorm p, const SolverConfig& cfg) {
  ValidateInstance(inst);
  ValidateConfig(cfg);
  if (p.is_infinite()) {
    throw InvalidArgumentError("solve supports finite p only");
  }
  SolveReport report;
  const IntegralAssignment greedy = GreedyP1(inst);
  auto evaluate = [&](const IntegralAssignment& a) {
    return EvaluateAssignment(inst, a, p, cfg.outcome_cap, cfg.mc_samples,
                              cfg.seed);
  };

  if (p.value() == 1.0) {
    report.path = "greedy-p1";
    report.assignment = greedy;
    report.norm = evaluate(greedy);
    report.final_T = report.norm.value;
    return report;
  }

  double upper = evaluate(greedy).value;
  if (upper <= 0.0) {
    report.path = "degenerate-zero";
    report.assignment = greedy;
    report.norm = evaluate(greedy);
    return report;
  }
  report.path = "lp-rounding";

  // Some machine receives job j, so E||S||_p >= min_i E Y_ij for every j.
  double lower = 0.0;
  for (int j = 0; j < inst.n; ++j) {
    double best = Expectation(inst.jobs[0][j]);
    for (int i = 1; i < inst.m; ++i) {
      best = std::min(best, Expectation(inst.jobs[i][j]));
    }
    lower = std::max(lower, best);
  }
  if (lower <= 0.0) lower = upper / 1024.0;
  lower = std::min(lower, upper);
  report.lower_bracket = lower;

  auto probe = [&](double T, StartingLp& start, StartingLpResult& res) {
    start = BuildStartingLp(inst, T, cfg, p);
    res = SolveStartingLp(start, cfg);
    report.probes.push_back({T, res.feasible, res.rounds});
  };

  StartingLp best_start;
  StartingLpResult best;
  probe(upper, best_start, best);
  while (!best.feasible) {
    if (report.bracket_expansions >= cfg.max_bracket_expansions) {
      throw InfeasibleError(
          "starting program infeasible at every tried upper bracket, last T = " +
          std::to_string(upper));
    }
    ++report.bracket_expansions;
    upper *= 2.0;
    probe(upper, best_start, best);
  }

  for (int it = 0; it < cfg.max_bisection_iters &&
                   upper / lower > 1.0 + cfg.bisection_rel_tol;
       ++it) {
    const double T = std::sqrt(lower * upper);
    StartingLp start;
    StartingLpResult res;
    probe(T, start, res);
    if (res.feasible) {
      upper = T;
      best_start = std::move(start);
      best = std::move(res);
    } else {
      lower = T;
    }
  }
  for (const BisectionProbe& a : report.probes) {
    for (const BisectionProbe& b : report.probes) {
      if (a.feasible && !b.feasible && a.T < b.T) report.non_monotone = true;
    }
  }
  report.final_T = upper;
  report.v_grid = best_start.v_grid;
  report.xbar = best.x;
  report.lp_rounds = best.rounds;
  report.lp_cuts = best.cuts;

  ComputeVBar(best_start, best.x, p, report.params);
  ComputeLBar(best_start, best.x, report.params);
  for (double v : report.params.v_bar) report.sum_inverse_v_bar += 1.0 / v;
  for (int ell = 1; ell <= inst.m; ++ell) {
    const auto count = std::count(report.params.l_bar.begin(),
                                  report.params.l_bar.end(), ell);
    if (count > ell) report.l_bar_counts_ok = false;
  }

  const ReducedLp reduced = BuildReducedLp(best_start, report.params, cfg, p);
  report.xbar_reduced_violation = MaxViolation(reduced.lp, Flatten(best.x));
  const LpSolution vertex = SolveLp(reduced.lp);
  report.rounded = vertex.status == LpStatus::kOptimal
                       ? ExtractAssignment(vertex, inst.m, inst.n)
                       : best.x;

  report.gap = MergeToGap(best_start, report.params, cfg, p);
  report.assignment = RoundShmoysTardos(report.gap, report.rounded);
  report.audit = VerifyGapGuarantees(report.gap, report.rounded,
                                     report.assignment, reduced.rows);
  report.norm = evaluate(report.assignment);
  return report;
}

}  // namespace slb
