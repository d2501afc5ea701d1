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

// Finite-support non-negative discrete distributions and the scalar
// functionals used throughout the solver: moments, the L-function
//
//   nu_{eps,p}(X) = (1/p) ln E (1 + X/eps)^p,
//
// its capped version min(1, nu), and the effective size
//
//   beta_l(X) = (1/ln l) ln E exp(X ln l),   beta_1(X) = E X.
//
// Exponential-type functionals are evaluated in log space (log-sum-exp) so
// that large p or large l do not overflow.

#ifndef SLB_DIST_H_
#define SLB_DIST_H_

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace slb {

// Values closer than this are merged into a single atom.
inline constexpr double kAtomMergeTolerance = 1e-12;
// Probabilities of a constructed distribution must sum to one within this.
inline constexpr double kProbabilitySumTolerance = 1e-12;

struct Atom {
  double value = 0.0;
  double prob = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

// The exponent of an l_p norm or p-moment: p in [1, inf].
class PNorm {
 public:
  explicit PNorm(double p);
  static PNorm Infinity() {
    return PNorm(std::numeric_limits<double>::infinity());
  }

  double value() const { return p_; }
  bool is_infinite() const { return p_ == std::numeric_limits<double>::infinity(); }

  friend bool operator==(const PNorm&, const PNorm&) = default;

 private:
  double p_;
};

// Distribution of a non-negative random variable with finitely many atoms.
// Atoms are kept sorted by strictly increasing value, every probability is in
// (0, 1] and they sum to one.
class DiscreteDist {
 public:
  // Point mass at zero.
  DiscreteDist();

  // Validates and canonicalizes `atoms`: zero-probability atoms are dropped,
  // values within kAtomMergeTolerance merged, and the probabilities
  // renormalized once their sum is confirmed to be 1 within `sum_tolerance`.
  // Throws InvalidArgumentError on negative/non-finite values or bad sums.
  explicit DiscreteDist(std::vector<Atom> atoms,
                        double sum_tolerance = kProbabilitySumTolerance);

  static DiscreteDist PointMass(double value);
  // {0 w.p. 1-q, value w.p. q}.
  static DiscreteDist TwoPoint(double value, double q);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double min_value() const { return atoms_.front().value; }
  double max_value() const { return atoms_.back().value; }
  bool IsPointMass() const { return atoms_.size() == 1; }
  bool IsZero() const { return IsPointMass() && atoms_.front().value == 0.0; }

  friend bool operator==(const DiscreteDist&, const DiscreteDist&) = default;

 private:
  std::vector<Atom> atoms_;
};

double Expectation(const DiscreteDist& d);

// E X^p. Throws OverflowError if some value^p is not representable.
double RawMoment(const DiscreteDist& d, PNorm p);

// nu_{eps,p}(X) >= 0, zero iff X is a point mass at zero.
double LFunction(const DiscreteDist& d, double eps, PNorm p);

// min(1, nu_{eps,p}(X)).
double CappedLFunction(const DiscreteDist& d, double eps, PNorm p);

// beta_l(X) for l >= 1. Values of l in (1, 1 + 1e-9) are treated as l = 1.
double EffectiveSize(const DiscreteDist& d, double ell);

// Pointwise split X = X 1(X <= theta) + X 1(X > theta), returned as the
// marginals (truncated, exceptional).
std::pair<DiscreteDist, DiscreteDist> TruncateSplit(const DiscreteDist& d,
                                                    double theta);

// Distribution of c X.
DiscreteDist Scale(const DiscreteDist& d, double c);

}  // namespace slb

#endif  // SLB_DIST_H_
