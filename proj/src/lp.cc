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

#include "slb/lp.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "slb/errors.h"

namespace slb {

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
    case LpStatus::kRoundLimit:
      return "round-limit";
  }
  return "unknown";
}

// --------------------------------------------------------
// LinearProgram
// --------------------------------------------------------

int LinearProgram::AddVariable(std::string name, double lower, double upper) {
  if (std::isnan(lower) || std::isnan(upper) || lower > upper ||
      lower == kInf || upper == -kInf) {
    throw InvalidArgumentError("bad bounds for variable " + name);
  }
  variables_.push_back({std::move(name), lower, upper});
  return num_variables() - 1;
}

namespace {

std::vector<LpTerm> Canonicalize(const std::vector<LpTerm>& terms, int num_vars,
                                 const std::string& context) {
  std::map<int, double> merged;
  for (const LpTerm& t : terms) {
    if (t.var < 0 || t.var >= num_vars) {
      throw InvalidArgumentError(context + ": unknown variable index " +
                                 std::to_string(t.var));
    }
    if (!std::isfinite(t.coef)) {
      throw InvalidArgumentError(context + ": non-finite coefficient");
    }
    merged[t.var] += t.coef;
  }
  std::vector<LpTerm> out;
  for (const auto& [var, coef] : merged) {
    if (coef != 0.0) out.push_back({var, coef});
  }
  return out;
}

}  // namespace

int LinearProgram::AddConstraint(LpConstraint constraint) {
  if (!std::isfinite(constraint.rhs)) {
    throw InvalidArgumentError("non-finite rhs in " + constraint.name);
  }
  constraint.terms =
      Canonicalize(constraint.terms, num_variables(), constraint.name);
  constraints_.push_back(std::move(constraint));
  return num_constraints() - 1;
}

void LinearProgram::SetObjective(ObjectiveSense sense,
                                 std::vector<LpTerm> terms) {
  objective_ = Canonicalize(terms, num_variables(), "objective");
  sense_ = sense;
}

std::vector<double> LinearProgram::ObjectiveVector() const {
  std::vector<double> c(variables_.size(), 0.0);
  if (sense_ == ObjectiveSense::kFeasibility) return c;
  for (const LpTerm& t : objective_) c[t.var] = t.coef;
  return c;
}

double NormalizedViolation(const LpConstraint& c,
                           std::span<const double> values) {
  double scale = 0.0;
  double lhs = 0.0;
  for (const LpTerm& t : c.terms) {
    scale = std::max(scale, std::abs(t.coef));
    lhs += t.coef * values[t.var];
  }
  double excess = 0.0;
  switch (c.relation) {
    case Relation::kLessEqual:
      excess = lhs - c.rhs;
      break;
    case Relation::kGreaterEqual:
      excess = c.rhs - lhs;
      break;
    case Relation::kEqual:
      excess = std::abs(lhs - c.rhs);
      break;
  }
  if (excess <= 0.0) return 0.0;
  return scale > 0.0 ? excess / scale : excess;
}

double MaxViolation(const LinearProgram& lp, std::span<const double> values) {
  double worst = 0.0;
  for (const LpConstraint& c : lp.constraints()) {
    worst = std::max(worst, NormalizedViolation(c, values));
  }
  for (int j = 0; j < lp.num_variables(); ++j) {
    const LpVariable& v = lp.variables()[j];
    worst = std::max({worst, v.lower - values[j], values[j] - v.upper});
  }
  return worst;
}

// --------------------------------------------------------
// Simplex
// --------------------------------------------------------

namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr int kRefactorInterval = 50;

// Bounded-variable revised simplex on a dense matrix with an explicit basis
// inverse. Rows are scaled to unit max-norm; every row gets a slack (if an
// inequality) and, when the slack cannot absorb the initial residual, an
// artificial. Phase 1 minimizes the sum of artificials, phase 2 the objective.
class BoundedSimplex {
 public:
  BoundedSimplex(const LinearProgram& lp, const SimplexOptions& options)
      : lp_(lp), options_(options) {
    Build();
  }

  LpSolution Run();

 private:
  enum class PhaseResult { kOptimal, kUnbounded, kIterationLimit };

  double& A(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double A(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }
  double& Binv(int i, int k) {
    return binv_[static_cast<std::size_t>(i) * m_ + k];
  }

  void Build();
  PhaseResult Iterate(const std::vector<double>& cost);
  std::vector<double> Duals(const std::vector<double>& cost);
  double ReducedCost(const std::vector<double>& cost,
                     const std::vector<double>& y, int j) const;
  void Pivot(int row, int entering, const std::vector<double>& alpha);
  void Refactor();
  void DriveOutArtificials();
  bool DualFeasible(const std::vector<double>& cost);
  LpSolution Finish(LpStatus status);

  const LinearProgram& lp_;
  const SimplexOptions& options_;

  int m_ = 0;         // rows kept in the working problem
  int n_ = 0;         // structural + slack + artificial columns
  int n_struct_ = 0;  // structural columns
  std::vector<int> row_of_;          // working row -> original constraint
  std::vector<double> row_scale_;    // working row = scale * original row
  std::vector<double> a_;            // m_ x n_, row-major
  std::vector<double> b_;
  std::vector<double> lo_, hi_, x_;
  std::vector<bool> artificial_;
  std::vector<int> basis_;  // row -> column
  std::vector<int> where_;  // column -> row, or -1 if nonbasic
  std::vector<double> binv_;
  std::vector<double> phase1_duals_;
  bool trivially_infeasible_ = false;
  int trivial_row_ = -1;
  std::int64_t pivots_ = 0;
};

void BoundedSimplex::Build() {
  n_struct_ = lp_.num_variables();
  const auto& cons = lp_.constraints();

  // Empty rows are checked directly and dropped.
  for (int r = 0; r < lp_.num_constraints(); ++r) {
    const LpConstraint& c = cons[r];
    if (c.terms.empty()) {
      const std::vector<double> none;
      if (NormalizedViolation(c, none) > options_.feasibility_tolerance) {
        trivially_infeasible_ = true;
        trivial_row_ = r;
      }
      continue;
    }
    double scale = 0.0;
    for (const LpTerm& t : c.terms) scale = std::max(scale, std::abs(t.coef));
    row_of_.push_back(r);
    row_scale_.push_back(1.0 / scale);
  }
  m_ = static_cast<int>(row_of_.size());

  // Structural columns start at a finite bound (or 0 when free).
  lo_.clear();
  hi_.clear();
  x_.clear();
  for (const LpVariable& v : lp_.variables()) {
    lo_.push_back(v.lower);
    hi_.push_back(v.upper);
    x_.push_back(std::isfinite(v.lower)   ? v.lower
                 : std::isfinite(v.upper) ? v.upper
                                          : 0.0);
  }

  // Residuals with every structural at its starting value.
  std::vector<double> residual(m_);
  for (int i = 0; i < m_; ++i) {
    const LpConstraint& c = cons[row_of_[i]];
    double lhs = 0.0;
    for (const LpTerm& t : c.terms) lhs += t.coef * x_[t.var];
    residual[i] = (c.rhs - lhs) * row_scale_[i];
  }

  // Column layout: structurals, one slack per inequality row, artificials.
  std::vector<int> slack_col(m_, -1);
  std::vector<double> slack_sign(m_, 0.0);
  int next = n_struct_;
  for (int i = 0; i < m_; ++i) {
    const Relation rel = cons[row_of_[i]].relation;
    if (rel == Relation::kEqual) continue;
    slack_col[i] = next++;
    slack_sign[i] = rel == Relation::kLessEqual ? 1.0 : -1.0;
  }
  std::vector<int> art_col(m_, -1);
  basis_.assign(m_, -1);
  for (int i = 0; i < m_; ++i) {
    const bool slack_absorbs =
        slack_col[i] >= 0 && residual[i] * slack_sign[i] >= 0.0;
    if (!slack_absorbs) art_col[i] = next++;
  }
  n_ = next;

  a_.assign(static_cast<std::size_t>(m_) * n_, 0.0);
  b_.assign(m_, 0.0);
  lo_.resize(n_, 0.0);
  hi_.resize(n_, kInf);
  x_.resize(n_, 0.0);
  artificial_.assign(n_, false);
  binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
  for (int i = 0; i < m_; ++i) {
    const LpConstraint& c = cons[row_of_[i]];
    for (const LpTerm& t : c.terms) A(i, t.var) = t.coef * row_scale_[i];
    b_[i] = c.rhs * row_scale_[i];
    if (slack_col[i] >= 0) A(i, slack_col[i]) = slack_sign[i];
    if (art_col[i] >= 0) {
      const double sign = residual[i] >= 0.0 ? 1.0 : -1.0;
      A(i, art_col[i]) = sign;
      artificial_[art_col[i]] = true;
      x_[art_col[i]] = std::abs(residual[i]);
      basis_[i] = art_col[i];
      Binv(i, i) = sign;
    } else {
      x_[slack_col[i]] = residual[i] * slack_sign[i];
      basis_[i] = slack_col[i];
      Binv(i, i) = slack_sign[i];
    }
  }
  where_.assign(n_, -1);
  for (int i = 0; i < m_; ++i) where_[basis_[i]] = i;
}

std::vector<double> BoundedSimplex::Duals(const std::vector<double>& cost) {
  std::vector<double> y(m_, 0.0);
  for (int i = 0; i < m_; ++i) {
    const double cb = cost[basis_[i]];
    if (cb == 0.0) continue;
    for (int k = 0; k < m_; ++k) y[k] += cb * Binv(i, k);
  }
  return y;
}

double BoundedSimplex::ReducedCost(const std::vector<double>& cost,
                                   const std::vector<double>& y, int j) const {
  double d = cost[j];
  for (int k = 0; k < m_; ++k) d -= y[k] * A(k, j);
  return d;
}

void BoundedSimplex::Pivot(int row, int entering,
                           const std::vector<double>& alpha) {
  const double piv = alpha[row];
  for (int k = 0; k < m_; ++k) Binv(row, k) /= piv;
  for (int i = 0; i < m_; ++i) {
    if (i == row || alpha[i] == 0.0) continue;
    const double f = alpha[i];
    for (int k = 0; k < m_; ++k) Binv(i, k) -= f * Binv(row, k);
  }
  where_[basis_[row]] = -1;
  basis_[row] = entering;
  where_[entering] = row;
  ++pivots_;
}

void BoundedSimplex::Refactor() {
  if (m_ == 0) return;
  // Gauss-Jordan on [B | I] with partial pivoting.
  std::vector<double> bmat(static_cast<std::size_t>(m_) * m_);
  for (int i = 0; i < m_; ++i) {
    for (int k = 0; k < m_; ++k) bmat[i * m_ + k] = A(i, basis_[k]);
  }
  std::vector<double> inv(static_cast<std::size_t>(m_) * m_, 0.0);
  for (int i = 0; i < m_; ++i) inv[i * m_ + i] = 1.0;
  for (int col = 0; col < m_; ++col) {
    int best = col;
    for (int r = col + 1; r < m_; ++r) {
      if (std::abs(bmat[r * m_ + col]) > std::abs(bmat[best * m_ + col])) {
        best = r;
      }
    }
    if (std::abs(bmat[best * m_ + col]) < 1e-14) {
      throw LimitExceededError("simplex basis became singular");
    }
    if (best != col) {
      for (int k = 0; k < m_; ++k) {
        std::swap(bmat[best * m_ + k], bmat[col * m_ + k]);
        std::swap(inv[best * m_ + k], inv[col * m_ + k]);
      }
    }
    const double piv = bmat[col * m_ + col];
    for (int k = 0; k < m_; ++k) {
      bmat[col * m_ + k] /= piv;
      inv[col * m_ + k] /= piv;
    }
    for (int r = 0; r < m_; ++r) {
      if (r == col) continue;
      const double f = bmat[r * m_ + col];
      if (f == 0.0) continue;
      for (int k = 0; k < m_; ++k) {
        bmat[r * m_ + k] -= f * bmat[col * m_ + k];
        inv[r * m_ + k] -= f * inv[col * m_ + k];
      }
    }
  }
  // inv is B^{-1} with rows indexed by basis position.
  binv_ = std::move(inv);

  std::vector<double> rhs = b_;
  for (int j = 0; j < n_; ++j) {
    if (where_[j] >= 0 || x_[j] == 0.0) continue;
    for (int i = 0; i < m_; ++i) rhs[i] -= A(i, j) * x_[j];
  }
  for (int i = 0; i < m_; ++i) {
    double v = 0.0;
    for (int k = 0; k < m_; ++k) v += Binv(i, k) * rhs[k];
    x_[basis_[i]] = v;
  }
}

BoundedSimplex::PhaseResult BoundedSimplex::Iterate(
    const std::vector<double>& cost) {
  bool bland = false;
  std::int64_t stalled = 0;
  int since_refactor = 0;
  const std::int64_t stall_limit = 5LL * (m_ + n_);
  std::vector<double> alpha(m_);

  while (true) {
    if (pivots_ >= options_.max_pivots) return PhaseResult::kIterationLimit;
    if (since_refactor >= kRefactorInterval) {
      Refactor();
      since_refactor = 0;
    }
    const std::vector<double> y = Duals(cost);

    // Pricing.
    int entering = -1;
    double direction = 0.0;
    double best_score = 0.0;
    double entering_d = 0.0;
    for (int j = 0; j < n_; ++j) {
      if (where_[j] >= 0 || lo_[j] == hi_[j]) continue;
      const double d = ReducedCost(cost, y, j);
      double dir = 0.0;
      if (d < -options_.optimality_tolerance && x_[j] < hi_[j]) {
        dir = 1.0;
      } else if (d > options_.optimality_tolerance && x_[j] > lo_[j]) {
        dir = -1.0;
      }
      if (dir == 0.0) continue;
      if (bland) {
        entering = j;
        direction = dir;
        entering_d = d;
        break;
      }
      if (std::abs(d) > best_score) {
        best_score = std::abs(d);
        entering = j;
        direction = dir;
        entering_d = d;
      }
    }
    if (entering < 0) return PhaseResult::kOptimal;

    for (int i = 0; i < m_; ++i) {
      double v = 0.0;
      for (int k = 0; k < m_; ++k) v += Binv(i, k) * A(k, entering);
      alpha[i] = v;
    }

    // Ratio test; basic i moves at rate -direction * alpha[i] per unit step.
    double step = hi_[entering] - lo_[entering];  // bound flip
    int leaving_row = -1;
    for (int i = 0; i < m_; ++i) {
      if (std::abs(alpha[i]) <= kPivotTolerance) continue;
      const int col = basis_[i];
      const double rate = -direction * alpha[i];
      double limit = kInf;
      if (rate < 0.0 && std::isfinite(lo_[col])) {
        limit = (x_[col] - lo_[col]) / -rate;
      } else if (rate > 0.0 && std::isfinite(hi_[col])) {
        limit = (hi_[col] - x_[col]) / rate;
      }
      limit = std::max(limit, 0.0);
      bool take = false;
      if (limit < step - 1e-12) {
        take = true;
      } else if (limit <= step + 1e-12 && leaving_row >= 0) {
        take = bland ? col < basis_[leaving_row]
                     : std::abs(alpha[i]) > std::abs(alpha[leaving_row]);
      } else if (limit <= step && leaving_row < 0) {
        take = true;
      }
      if (take) {
        step = limit;
        leaving_row = i;
      }
    }
    if (!std::isfinite(step)) return PhaseResult::kUnbounded;

    x_[entering] += direction * step;
    for (int i = 0; i < m_; ++i) {
      x_[basis_[i]] -= direction * alpha[i] * step;
    }
    if (leaving_row >= 0) {
      const int col = basis_[leaving_row];
      const double rate = -direction * alpha[leaving_row];
      x_[col] = rate < 0.0 ? lo_[col] : hi_[col];
      Pivot(leaving_row, entering, alpha);
      ++since_refactor;
    } else {
      x_[entering] = direction > 0.0 ? hi_[entering] : lo_[entering];
      ++pivots_;
    }

    const double progress = std::abs(entering_d) * step;
    if (progress > 1e-12) {
      stalled = 0;
    } else if (++stalled > stall_limit) {
      bland = true;
    }
  }
}

void BoundedSimplex::DriveOutArtificials() {
  std::vector<double> alpha(m_);
  for (int r = 0; r < m_; ++r) {
    if (!artificial_[basis_[r]]) continue;
    int best = -1;
    double best_abs = 1e-7;
    for (int j = 0; j < n_; ++j) {
      if (where_[j] >= 0 || artificial_[j]) continue;
      double v = 0.0;
      for (int k = 0; k < m_; ++k) v += Binv(r, k) * A(k, j);
      if (std::abs(v) > best_abs) {
        best_abs = std::abs(v);
        best = j;
      }
    }
    if (best < 0) continue;  // redundant row; the artificial stays at 0
    for (int i = 0; i < m_; ++i) {
      double v = 0.0;
      for (int k = 0; k < m_; ++k) v += Binv(i, k) * A(k, best);
      alpha[i] = v;
    }
    x_[basis_[r]] = 0.0;
    Pivot(r, best, alpha);
  }
  Refactor();
}

bool BoundedSimplex::DualFeasible(const std::vector<double>& cost) {
  const std::vector<double> y = Duals(cost);
  const double tol = 1e-7;
  for (int j = 0; j < n_; ++j) {
    if (where_[j] >= 0 || lo_[j] == hi_[j]) continue;
    const double d = ReducedCost(cost, y, j);
    if (d < -tol && x_[j] < hi_[j]) return false;
    if (d > tol && x_[j] > lo_[j]) return false;
  }
  return true;
}

LpSolution BoundedSimplex::Finish(LpStatus status) {
  LpSolution sol;
  sol.status = status;
  sol.pivots = pivots_;
  sol.values.assign(x_.begin(), x_.begin() + n_struct_);
  for (int j = 0; j < n_struct_; ++j) {
    sol.values[j] = std::clamp(sol.values[j], lo_[j], hi_[j]);
  }
  const std::vector<double> c = lp_.ObjectiveVector();
  for (int j = 0; j < n_struct_; ++j) {
    sol.objective_value += c[j] * sol.values[j];
  }
  return sol;
}

LpSolution BoundedSimplex::Run() {
  if (trivially_infeasible_) {
    LpSolution sol = Finish(LpStatus::kInfeasible);
    sol.farkas.assign(lp_.num_constraints(), 0.0);
    const LpConstraint& c = lp_.constraints()[trivial_row_];
    // 0 <= rhs < 0 style contradiction: pick the sign that exposes it.
    sol.farkas[trivial_row_] =
        (c.relation == Relation::kGreaterEqual ||
         (c.relation == Relation::kEqual && c.rhs > 0.0))
            ? 1.0
            : -1.0;
    if (options_.audit) {
      sol.audited = true;
      sol.audit_passed = VerifyInfeasibilityWitness(lp_, sol.farkas);
    }
    return sol;
  }

  // Phase 1.
  std::vector<double> cost(n_, 0.0);
  bool any_artificial = false;
  for (int j = 0; j < n_; ++j) {
    if (artificial_[j]) {
      cost[j] = 1.0;
      any_artificial = true;
    }
  }
  if (any_artificial) {
    if (Iterate(cost) == PhaseResult::kIterationLimit) {
      return Finish(LpStatus::kIterationLimit);
    }
    Refactor();
    double infeasibility = 0.0;
    for (int j = 0; j < n_; ++j) {
      if (artificial_[j]) infeasibility += x_[j];
    }
    if (infeasibility > options_.feasibility_tolerance) {
      LpSolution sol = Finish(LpStatus::kInfeasible);
      const std::vector<double> y = Duals(cost);
      sol.farkas.assign(lp_.num_constraints(), 0.0);
      for (int i = 0; i < m_; ++i) sol.farkas[row_of_[i]] = y[i] * row_scale_[i];
      if (options_.audit) {
        sol.audited = true;
        sol.audit_passed = VerifyInfeasibilityWitness(lp_, sol.farkas);
      }
      return sol;
    }
    for (int j = 0; j < n_; ++j) {
      if (!artificial_[j]) continue;
      lo_[j] = hi_[j] = 0.0;
      if (where_[j] < 0) x_[j] = 0.0;
    }
    DriveOutArtificials();
  }

  // Phase 2.
  const std::vector<double> c = lp_.ObjectiveVector();
  const double sign = lp_.sense() == ObjectiveSense::kMaximize ? -1.0 : 1.0;
  std::fill(cost.begin(), cost.end(), 0.0);
  for (int j = 0; j < n_struct_; ++j) cost[j] = sign * c[j];
  if (lp_.sense() != ObjectiveSense::kFeasibility) {
    switch (Iterate(cost)) {
      case PhaseResult::kIterationLimit:
        return Finish(LpStatus::kIterationLimit);
      case PhaseResult::kUnbounded:
        return Finish(LpStatus::kUnbounded);
      case PhaseResult::kOptimal:
        break;
    }
  }
  Refactor();
  LpSolution sol = Finish(LpStatus::kOptimal);
  if (options_.audit) {
    sol.audited = true;
    sol.audit_passed =
        DualFeasible(cost) &&
        MaxViolation(lp_, sol.values) <= options_.feasibility_tolerance;
  }
  return sol;
}

}  // namespace

LpSolution SolveLp(const LinearProgram& lp, const SimplexOptions& options) {
  BoundedSimplex simplex(lp, options);
  return simplex.Run();
}

bool VerifyInfeasibilityWitness(const LinearProgram& lp,
                                std::span<const double> multipliers,
                                double tolerance) {
  if (static_cast<int>(multipliers.size()) != lp.num_constraints()) {
    return false;
  }
  std::vector<double> g(lp.num_variables(), 0.0);
  double yb = 0.0;
  double scale = 0.0;
  for (int r = 0; r < lp.num_constraints(); ++r) {
    const LpConstraint& c = lp.constraints()[r];
    const double y = multipliers[r];
    if (c.relation == Relation::kLessEqual && y > tolerance) return false;
    if (c.relation == Relation::kGreaterEqual && y < -tolerance) return false;
    for (const LpTerm& t : c.terms) g[t.var] += y * t.coef;
    yb += y * c.rhs;
    scale = std::max(scale, std::abs(y * c.rhs));
  }
  // max over the box of g^T x.
  double best = 0.0;
  for (int j = 0; j < lp.num_variables(); ++j) {
    const LpVariable& v = lp.variables()[j];
    if (std::abs(g[j]) <= tolerance * 1e-3) continue;
    const double bound = g[j] > 0.0 ? v.upper : v.lower;
    if (!std::isfinite(bound)) return false;
    best += g[j] * bound;
    scale = std::max(scale, std::abs(g[j] * bound));
  }
  return best < yb - tolerance * std::max(1.0, scale);
}

SeparationResult SolveWithSeparation(LinearProgram lp,
                                     const SeparationOracle& oracle,
                                     int max_rounds,
                                     const SimplexOptions& options) {
  if (max_rounds < 1) throw InvalidArgumentError("max_rounds must be >= 1");
  SeparationResult result;
  while (true) {
    result.solution = SolveLp(lp, options);
    ++result.rounds;
    if (result.solution.status != LpStatus::kOptimal) return result;
    std::vector<LpConstraint> cuts = oracle(result.solution);
    if (cuts.empty()) return result;
    if (result.rounds >= max_rounds) {
      result.solution.status = LpStatus::kRoundLimit;
      return result;
    }
    for (LpConstraint& cut : cuts) {
      lp.AddConstraint(cut);
      result.added_cuts.push_back(std::move(cut));
    }
  }
}

std::string ToLpText(const LinearProgram& lp) {
  std::ostringstream out;
  out.precision(17);
  auto name_of = [&](int j) {
    const std::string& n = lp.variables()[j].name;
    return n.empty() ? "x" + std::to_string(j) : n;
  };
  auto write_terms = [&](const std::vector<LpTerm>& terms) {
    if (terms.empty()) out << " 0";
    for (const LpTerm& t : terms) {
      out << (t.coef < 0 ? " - " : " + ") << std::abs(t.coef) << " "
          << name_of(t.var);
    }
  };
  switch (lp.sense()) {
    case ObjectiveSense::kMinimize:
      out << "Minimize\n";
      break;
    case ObjectiveSense::kMaximize:
      out << "Maximize\n";
      break;
    case ObjectiveSense::kFeasibility:
      out << "Minimize\n";
      break;
  }
  std::vector<LpTerm> obj;
  const std::vector<double> c = lp.ObjectiveVector();
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (c[j] != 0.0) obj.push_back({j, c[j]});
  }
  out << " obj:";
  write_terms(obj);
  out << "\nSubject To\n";
  for (int r = 0; r < lp.num_constraints(); ++r) {
    const LpConstraint& con = lp.constraints()[r];
    out << " " << (con.name.empty() ? "c" + std::to_string(r) : con.name)
        << ":";
    write_terms(con.terms);
    out << (con.relation == Relation::kLessEqual      ? " <= "
            : con.relation == Relation::kGreaterEqual ? " >= "
                                                      : " = ")
        << con.rhs << "\n";
  }
  out << "Bounds\n";
  for (int j = 0; j < lp.num_variables(); ++j) {
    const LpVariable& v = lp.variables()[j];
    out << " ";
    if (std::isfinite(v.lower)) {
      out << v.lower << " <= ";
    } else {
      out << "-inf <= ";
    }
    out << name_of(j);
    if (std::isfinite(v.upper)) {
      out << " <= " << v.upper;
    } else {
      out << " <= +inf";
    }
    out << "\n";
  }
  out << "End\n";
  return out.str();
}

}  // namespace slb
