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


#include "slb/bounds_suite.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "slb/dist.h"
#include "slb/errors.h"
#include "slb/random_instances.h"

namespace slb {
namespace {

constexpr double kRelSlack = 1e-9;

double SumNu(std::span<const DiscreteDist> ds, double eps, PNorm p) {
  double s = 0.0;
  for (const DiscreteDist& d : ds) s += LFunction(d, eps, p);
  return s;
}

bool AllZero(std::span<const DiscreteDist> ds) {
  return std::all_of(ds.begin(), ds.end(),
                     [](const DiscreteDist& d) { return d.IsZero(); });
}

// Pr(X >= t) counting atoms within round-off of t as reaching it.
double TailAtLeast(const DiscreteDist& d, double t) {
  return TailProbability(d, t - 1e-9 * std::max(1.0, std::abs(t)));
}

BoundsSuiteResult Named(std::string name) {
  BoundsSuiteResult r;
  r.name = std::move(name);
  return r;
}

}  // namespace

bool MakeConverseJensenFamily(SplitMix64& rng, PNorm p, double alpha0,
                              std::vector<MachineGroup>& groups,
                              double& moment_sum) {
  groups.clear();
  moment_sum = 0.0;
  const int group_count = 1 + static_cast<int>(rng.Below(3));
  std::vector<DiscreteDist> loads;
  std::vector<double> moments;
  std::vector<double> weights;
  for (int g = 0; g < group_count; ++g) {
    const int jobs = 1 + static_cast<int>(rng.Below(3));
    std::vector<DiscreteDist> parts;
    for (int k = 0; k < jobs; ++k) {
      const double q = 0.05 + 0.45 * rng.Uniform();
      parts.push_back(DiscreteDist::TwoPoint(rng.Uniform(), q));
    }
    DiscreteDist load = SumDistribution(parts);
    const double moment = RawMoment(load, p);
    if (moment > 1.0) return false;
    if (moment <= 0.0) {
      --g;  // a zero machine adds nothing; redraw
      continue;
    }
    loads.push_back(std::move(load));
    moments.push_back(moment);
    weights.push_back(0.1 + rng.Uniform());
  }
  double weight_sum = 0.0;
  for (double w : weights) weight_sum += w;
  const double target = std::pow(1.0 / alpha0, p.value());
  for (std::size_t g = 0; g < loads.size(); ++g) {
    const double share = target * weights[g] / weight_sum;
    const auto copies =
        static_cast<std::int64_t>(std::ceil(share / moments[g]));
    groups.push_back({loads[g], std::max<std::int64_t>(copies, 1)});
    moment_sum += static_cast<double>(groups.back().copies) * moments[g];
  }
  return true;
}

ConverseJensenCheck CheckConverseJensen(const std::vector<MachineGroup>& groups,
                                        double moment_sum, PNorm p,
                                        std::int64_t mc_samples,
                                        std::uint64_t seed) {
  ConverseJensenCheck check;
  check.quarter_root = 0.25 * std::pow(moment_sum, 1.0 / p.value());
  try {
    check.norm_lower = ExpectedLpNormOfGroupsExact(groups, p, 100'000);
  } catch (const LimitExceededError&) {
    const McEstimate mc = ExpectedLpNormOfGroupsMc(groups, p, mc_samples, seed);
    check.norm_lower = mc.mean - 4.0 * mc.std_error;
  }
  check.passed = check.norm_lower > check.quarter_root;
  return check;
}

std::vector<BoundsSuiteResult> RunBoundsSuites(const BoundsSuiteOptions& opt) {
  if (opt.families < 1) throw InvalidArgumentError("families must be >= 1");
  if (opt.ps.empty()) throw InvalidArgumentError("need at least one p");
  for (double p : opt.ps) {
    if (!(p > 1.0) || !std::isfinite(p)) {
      throw InvalidArgumentError("verify-bounds needs finite p > 1");
    }
  }
  BoundsSuiteResult sandwich = Named("latala-sandwich");
  BoundsSuiteResult upper = Named("l-function-upper");
  BoundsSuiteResult lower = Named("l-function-lower");
  BoundsSuiteResult jensen = Named("jensen");
  BoundsSuiteResult converse = Named("converse-jensen");
  BoundsSuiteResult tail = Named("effective-size-tail");

  SplitMix64 root(opt.seed);
  for (int f = 0; f < opt.families; ++f) {
    SplitMix64 rng = root.Split(static_cast<std::uint64_t>(f));
    const PNorm p(opt.ps[f % opt.ps.size()]);
    const std::vector<DiscreteDist> ds = RandomFamily(rng, 6, 4, 10.0);
    if (AllZero(ds)) {
      ++sandwich.skipped;
    } else {
      const double moment = SumMomentExact(ds, p);
      const LatalaBounds b = ComputeLatalaBounds(ds, p);
      ++sandwich.checked;
      if (moment < b.lower * (1.0 - kRelSlack) ||
          moment > b.upper * (1.0 + kRelSlack)) {
        ++sandwich.violations;
      }
      for (int k = 0; k < 5; ++k) {
        const double eps = b.eps_star * std::exp(6.0 * rng.Uniform() - 3.0);
        const double nu = SumNu(ds, eps, p);
        ++upper.checked;
        // Compare logs: E S^p <= eps^p e^{p sum nu}.
        if (std::log(moment) >
            p.value() * (std::log(eps) + nu) + kRelSlack) {
          ++upper.violations;
        }
        if (nu >= 1.0) {
          ++lower.checked;
          if (moment < std::pow(eps / 10.0, p.value()) * (1.0 - kRelSlack)) {
            ++lower.violations;
          }
        } else {
          ++lower.skipped;
        }
      }
    }

    // Jensen on a small random machine vector.
    MachineLoads loads;
    const int m = 1 + static_cast<int>(rng.Below(4));
    loads.per_machine.resize(m);
    double moment_sum = 0.0;
    for (int i = 0; i < m; ++i) {
      const int jobs = static_cast<int>(rng.Below(4));
      for (int k = 0; k < jobs; ++k) {
        loads.per_machine[i].push_back(RandomDist(rng, 3, 10.0));
      }
      moment_sum += SumMomentExact(loads.per_machine[i], p);
    }
    ++jensen.checked;
    if (ExpectedLpNormExact(loads, p) >
        std::pow(moment_sum, 1.0 / p.value()) * (1.0 + kRelSlack)) {
      ++jensen.violations;
    }

    // Tail of a sum via effective sizes, for a few scales.
    const std::vector<DiscreteDist> ys = RandomFamily(rng, 6, 4, 2.0);
    const DiscreteDist sum = SumDistribution(ys);
    for (double ell : {2.0, 3.0, 5.0, 10.0}) {
      double beta = 0.0;
      for (const DiscreteDist& y : ys) beta += EffectiveSize(y, ell);
      for (double t : {0.0, 0.5, 1.0, 2.0}) {
        ++tail.checked;
        if (TailAtLeast(sum, beta + t) >
            std::pow(ell, -t) * (1.0 + kRelSlack) + 1e-15) {
          ++tail.violations;
        }
      }
    }
  }

  // Converse Jensen: only p <= 3 keeps the machine counts representable.
  std::vector<double> converse_ps;
  for (double p : opt.ps) {
    if (p <= 3.0) converse_ps.push_back(p);
  }
  if (converse_ps.empty()) converse_ps.push_back(2.0);
  const int converse_families = std::min(opt.families, 100);
  double best_passing = 0.0;
  std::vector<double> scan;
  for (double a = 0.5; a > opt.alpha0 * (1.0 + 1e-12); a /= 2.0) {
    scan.push_back(a);
  }
  scan.push_back(opt.alpha0);
  for (double a0 : scan) {
    const bool configured = a0 == scan.back();
    std::int64_t failures = 0;
    SplitMix64 croot = root.Split(0xC0FFEEULL);
    for (int f = 0; f < converse_families; ++f) {
      SplitMix64 rng = croot.Split(static_cast<std::uint64_t>(f));
      const PNorm p(converse_ps[f % converse_ps.size()]);
      std::vector<MachineGroup> groups;
      double ms = 0.0;
      if (!MakeConverseJensenFamily(rng, p, a0, groups, ms)) {
        if (configured) ++converse.skipped;
        continue;
      }
      const ConverseJensenCheck c =
          CheckConverseJensen(groups, ms, p, opt.mc_samples, rng());
      if (!c.passed) ++failures;
      if (configured) {
        ++converse.checked;
        if (!c.passed) ++converse.violations;
      }
    }
    if (failures == 0) best_passing = std::max(best_passing, a0);
  }
  std::ostringstream note;
  note << "alpha0=" << opt.alpha0 << " largest dyadic alpha0 with no failure="
       << best_passing;
  converse.detail = note.str();

  return {sandwich, upper, lower, jensen, converse, tail};
}

}  // namespace slb
