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

#include "slb/dist.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "slb/errors.h"

namespace slb {
namespace {

// ln sum_k exp(terms[k]), stable for large positive terms.
double LogSumExp(std::span<const double> terms) {
  const double peak = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(peak)) return peak;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - peak);
  return peak + std::log(sum);
}

void RequireFinitePositive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw InvalidArgumentError(std::string(name) +
                               " must be positive and finite, got " +
                               std::to_string(x));
  }
}

}  // namespace

PNorm::PNorm(double p) : p_(p) {
  if (!(p >= 1.0)) {
    throw InvalidArgumentError("p must be >= 1, got " + std::to_string(p));
  }
}

DiscreteDist::DiscreteDist() : atoms_{{0.0, 1.0}} {}

DiscreteDist::DiscreteDist(std::vector<Atom> atoms, double sum_tolerance) {
  double total = 0.0;
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.value) || a.value < 0.0) {
      throw InvalidArgumentError("atom value must be finite and >= 0, got " +
                                 std::to_string(a.value));
    }
    if (!std::isfinite(a.prob) || a.prob < 0.0 || a.prob > 1.0 + sum_tolerance) {
      throw InvalidArgumentError("atom probability must be in [0, 1], got " +
                                 std::to_string(a.prob));
    }
    total += a.prob;
  }
  if (std::abs(total - 1.0) > sum_tolerance) {
    throw InvalidArgumentError("probabilities sum to " + std::to_string(total) +
                               ", expected 1");
  }
  std::erase_if(atoms, [](const Atom& a) { return a.prob == 0.0; });
  if (atoms.empty()) throw InvalidArgumentError("distribution has no atoms");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.value < b.value; });

  atoms_.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!atoms_.empty() &&
        a.value - atoms_.back().value <= kAtomMergeTolerance) {
      atoms_.back().prob += a.prob;
    } else {
      atoms_.push_back(a);
    }
  }
  // Leave sums that are 1 up to summation round-off alone, so a stored
  // distribution re-parses to itself.
  if (std::abs(total - 1.0) > 1e-14) {
    for (Atom& a : atoms_) a.prob /= total;
  }
}

DiscreteDist DiscreteDist::PointMass(double value) {
  return DiscreteDist({{value, 1.0}});
}

DiscreteDist DiscreteDist::TwoPoint(double value, double q) {
  return DiscreteDist({{0.0, 1.0 - q}, {value, q}});
}

double Expectation(const DiscreteDist& d) {
  double mean = 0.0;
  for (const Atom& a : d.atoms()) mean += a.value * a.prob;
  return mean;
}

double RawMoment(const DiscreteDist& d, PNorm p) {
  if (p.is_infinite()) throw InvalidArgumentError("RawMoment needs finite p");
  double moment = 0.0;
  for (const Atom& a : d.atoms()) {
    const double power = std::pow(a.value, p.value());
    if (!std::isfinite(power)) {
      throw OverflowError("value^p overflows for value " +
                          std::to_string(a.value));
    }
    moment += power * a.prob;
  }
  return moment;
}

double LFunction(const DiscreteDist& d, double eps, PNorm p) {
  RequireFinitePositive(eps, "eps");
  if (p.is_infinite()) throw InvalidArgumentError("LFunction needs finite p");
  if (d.IsZero()) return 0.0;
  std::vector<double> terms;
  terms.reserve(d.size());
  for (const Atom& a : d.atoms()) {
    terms.push_back(std::log(a.prob) + p.value() * std::log1p(a.value / eps));
  }
  const double nu = LogSumExp(terms) / p.value();
  if (!std::isfinite(nu)) throw OverflowError("L-function is not finite");
  return std::max(0.0, nu);
}

double CappedLFunction(const DiscreteDist& d, double eps, PNorm p) {
  return std::min(1.0, LFunction(d, eps, p));
}

double EffectiveSize(const DiscreteDist& d, double ell) {
  if (!(ell >= 1.0) || !std::isfinite(ell)) {
    throw InvalidArgumentError("effective size scale must be >= 1, got " +
                               std::to_string(ell));
  }
  if (ell < 1.0 + 1e-9) return Expectation(d);
  const double log_ell = std::log(ell);
  std::vector<double> terms;
  terms.reserve(d.size());
  for (const Atom& a : d.atoms()) {
    terms.push_back(std::log(a.prob) + a.value * log_ell);
  }
  const double beta = LogSumExp(terms) / log_ell;
  if (!std::isfinite(beta)) throw OverflowError("effective size is not finite");
  // Jensen: beta_l >= E X; only rounding can break it.
  return std::max(beta, Expectation(d));
}

std::pair<DiscreteDist, DiscreteDist> TruncateSplit(const DiscreteDist& d,
                                                    double theta) {
  RequireFinitePositive(theta, "theta");
  std::vector<Atom> truncated;
  std::vector<Atom> exceptional;
  for (const Atom& a : d.atoms()) {
    if (a.value <= theta) {
      truncated.push_back(a);
      exceptional.push_back({0.0, a.prob});
    } else {
      truncated.push_back({0.0, a.prob});
      exceptional.push_back(a);
    }
  }
  return {DiscreteDist(std::move(truncated)),
          DiscreteDist(std::move(exceptional))};
}

DiscreteDist Scale(const DiscreteDist& d, double c) {
  RequireFinitePositive(c, "scale factor");
  std::vector<Atom> atoms(d.atoms().begin(), d.atoms().end());
  for (Atom& a : atoms) a.value *= c;
  return DiscreteDist(std::move(atoms));
}

}  // namespace slb
