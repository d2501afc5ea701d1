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

// A small dense linear-programming engine: bounded-variable primal simplex
// (two phases, Dantzig pricing with a Bland's-rule fallback on stalling) and
// a cutting-plane driver for constraint families given by a separation
// oracle. Sized for desk-scale programs (hundreds of variables and rows).

#ifndef SLB_LP_H_
#define SLB_LP_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace slb {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class ObjectiveSense { kMinimize, kMaximize, kFeasibility };
enum class LpStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
  kRoundLimit,  // cutting-plane loop ran out of rounds
};

const char* ToString(LpStatus status);

struct LpTerm {
  int var = 0;
  double coef = 0.0;
};

struct LpConstraint {
  std::string name;
  std::vector<LpTerm> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

struct LpVariable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
};

class LinearProgram {
 public:
  // Returns the variable index. Requires lower <= upper.
  int AddVariable(std::string name, double lower, double upper);
  // Duplicate terms are summed and zero terms dropped. Returns the row index.
  int AddConstraint(LpConstraint constraint);
  void SetObjective(ObjectiveSense sense, std::vector<LpTerm> terms = {});

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const std::vector<LpVariable>& variables() const { return variables_; }
  const std::vector<LpConstraint>& constraints() const { return constraints_; }
  ObjectiveSense sense() const { return sense_; }
  // Dense objective coefficients, one per variable.
  std::vector<double> ObjectiveVector() const;

 private:
  std::vector<LpVariable> variables_;
  std::vector<LpConstraint> constraints_;
  ObjectiveSense sense_ = ObjectiveSense::kFeasibility;
  std::vector<LpTerm> objective_;
};

// Violation of one constraint at `values`, measured on the row scaled so that
// its largest |coefficient| is 1. Zero when satisfied.
double NormalizedViolation(const LpConstraint& c, std::span<const double> values);

// Largest normalized violation over all constraints and variable bounds.
double MaxViolation(const LinearProgram& lp, std::span<const double> values);

struct SimplexOptions {
  double feasibility_tolerance = 1e-7;
  double optimality_tolerance = 1e-9;
  std::int64_t max_pivots = 1'000'000;
  // Re-derive the final basis from scratch and check dual feasibility (or the
  // infeasibility witness) before returning.
  bool audit = false;
};

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<double> values;
  double objective_value = 0.0;
  std::int64_t pivots = 0;
  // For kInfeasible: one multiplier per constraint, with y_i <= 0 on <= rows
  // and y_i >= 0 on >= rows, such that max over the variable box of
  // y^T A x is strictly below y^T b. See VerifyInfeasibilityWitness.
  std::vector<double> farkas;
  bool audited = false;
  bool audit_passed = false;
};

LpSolution SolveLp(const LinearProgram& lp, const SimplexOptions& options = {});

// Checks a certificate in the form produced for infeasible programs.
bool VerifyInfeasibilityWitness(const LinearProgram& lp,
                                std::span<const double> multipliers,
                                double tolerance = 1e-9);

// Given a solution of the current relaxation, returns constraints (valid for
// the intended feasible region) that it violates; empty means "accept".
using SeparationOracle =
    std::function<std::vector<LpConstraint>(const LpSolution&)>;

struct SeparationResult {
  LpSolution solution;
  int rounds = 0;  // number of LP solves
  std::vector<LpConstraint> added_cuts;
};

// Cutting-plane loop: solve, ask the oracle, add every returned cut, repeat.
// Stops with kRoundLimit after `max_rounds` solves that still produced cuts.
SeparationResult SolveWithSeparation(LinearProgram lp,
                                     const SeparationOracle& oracle,
                                     int max_rounds = 200,
                                     const SimplexOptions& options = {});

// Human-readable dump in the usual "LP file" layout (for debugging only).
std::string ToLpText(const LinearProgram& lp);

}  // namespace slb

#endif  // SLB_LP_H_
