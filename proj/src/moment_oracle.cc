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

#include "slb/moment_oracle.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "slb/errors.h"
#include "slb/rng.h"

namespace slb {
namespace {

// Raw products above this many pairs are refused before merging.
constexpr std::size_t kRawProductFactor = 4;

// Monte Carlo work is cut into this many chunks with their own sub-streams.
constexpr std::int64_t kMcChunks = 64;

// Running mean / sum of squared deviations (Welford), combinable in a fixed
// order (Chan et al.).
struct Moments {
  std::int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void Add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void Merge(const Moments& other) {
    if (other.n == 0) return;
    if (n == 0) {
      *this = other;
      return;
    }
    const double total = static_cast<double>(n + other.n);
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.n) / total;
    m2 += other.m2 + delta * delta * static_cast<double>(n) *
                         static_cast<double>(other.n) / total;
    n += other.n;
  }
};

// Runs `chunk_fn(chunk, rng)` for every chunk, possibly in parallel, and
// merges the per-chunk moments in chunk order.
McEstimate RunChunkedMc(
    std::int64_t samples, std::uint64_t seed,
    const std::function<void(std::int64_t, SplitMix64&, Moments&)>& chunk_fn) {
  if (samples < 2) {
    throw InvalidArgumentError("Monte Carlo needs at least 2 samples");
  }
  const std::int64_t chunks = std::min(kMcChunks, samples);
  std::vector<Moments> results(chunks);
  const SplitMix64 root(seed);
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t c = next++; c < chunks; c = next++) {
      const std::int64_t count =
          samples / chunks + (c < samples % chunks ? 1 : 0);
      SplitMix64 rng = root.Split(static_cast<std::uint64_t>(c));
      for (std::int64_t s = 0; s < count; ++s) chunk_fn(c, rng, results[c]);
    }
  };
  const unsigned threads = std::clamp<unsigned>(
      std::thread::hardware_concurrency(), 1, static_cast<unsigned>(chunks));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  Moments total;
  for (const Moments& r : results) total.Merge(r);
  McEstimate estimate;
  estimate.mean = total.mean;
  estimate.std_error =
      std::sqrt(total.m2 / static_cast<double>(total.n - 1)) /
      std::sqrt(static_cast<double>(total.n));
  estimate.samples = total.n;
  estimate.seed = seed;
  return estimate;
}

// Inverse-CDF sampler for one distribution.
class AtomSampler {
 public:
  explicit AtomSampler(const DiscreteDist& d) {
    double acc = 0.0;
    for (const Atom& a : d.atoms()) {
      acc += a.prob;
      cumulative_.push_back(acc);
      values_.push_back(a.value);
    }
  }

  double Draw(SplitMix64& rng) const {
    const double u = rng.Uniform() * cumulative_.back();
    const auto it =
        std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const std::size_t k = std::min<std::size_t>(
        static_cast<std::size_t>(it - cumulative_.begin()), values_.size() - 1);
    return values_[k];
  }

 private:
  std::vector<double> cumulative_;
  std::vector<double> values_;
};

// p-th power sum -> norm, for the finite case.
double RootOf(double power_sum, PNorm p) {
  return std::pow(power_sum, 1.0 / p.value());
}

std::size_t SaturatingMul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

// Distribution of the counts-weighted statistic sum_a n_a w_a (or max over
// occupied atoms when `use_max`) for n ~ Multinomial(copies, load probs).
DiscreteDist GroupStatistic(const MachineGroup& group, PNorm p, bool use_max,
                            std::size_t outcome_cap) {
  const auto atoms = group.load.atoms();
  const std::size_t s = atoms.size();
  std::vector<double> weight(s);
  for (std::size_t a = 0; a < s; ++a) {
    weight[a] = use_max ? atoms[a].value : std::pow(atoms[a].value, p.value());
  }
  // Number of count vectors: C(copies + s - 1, s - 1).
  double log_count = std::lgamma(static_cast<double>(group.copies + s)) -
                     std::lgamma(static_cast<double>(group.copies + 1)) -
                     std::lgamma(static_cast<double>(s));
  if (log_count > std::log(static_cast<double>(outcome_cap)) + 1e-9) {
    throw LimitExceededError("i.i.d. group has too many count vectors");
  }

  std::vector<Atom> out;
  std::vector<std::int64_t> counts(s, 0);
  const double log_n_fact = std::lgamma(static_cast<double>(group.copies) + 1);
  std::function<void(std::size_t, std::int64_t, double)> rec =
      [&](std::size_t a, std::int64_t left, double log_prob) {
        if (a + 1 == s) {
          counts[a] = left;
          const double lp =
              log_prob - std::lgamma(static_cast<double>(left) + 1) +
              static_cast<double>(left) * std::log(atoms[a].prob);
          double stat = 0.0;
          for (std::size_t k = 0; k < s; ++k) {
            if (use_max) {
              if (counts[k] > 0) stat = std::max(stat, weight[k]);
            } else {
              stat += static_cast<double>(counts[k]) * weight[k];
            }
          }
          out.push_back({stat, std::exp(log_n_fact + lp)});
          return;
        }
        for (std::int64_t c = 0; c <= left; ++c) {
          counts[a] = c;
          rec(a + 1, left - c,
              log_prob - std::lgamma(static_cast<double>(c) + 1) +
                  static_cast<double>(c) * std::log(atoms[a].prob));
        }
      };
  rec(0, group.copies, 0.0);
  // Probabilities are exact up to lgamma rounding; renormalize.
  double total = 0.0;
  for (const Atom& a : out) total += a.prob;
  for (Atom& a : out) a.prob /= total;
  return DiscreteDist(std::move(out));
}

}  // namespace

DiscreteDist Convolve(const DiscreteDist& a, const DiscreteDist& b,
                      std::size_t support_cap) {
  const std::size_t raw = SaturatingMul(a.size(), b.size());
  if (raw > SaturatingMul(kRawProductFactor, support_cap)) {
    throw LimitExceededError("convolution support " + std::to_string(raw) +
                             " exceeds cap " + std::to_string(support_cap));
  }
  std::vector<Atom> atoms;
  atoms.reserve(raw);
  for (const Atom& x : a.atoms()) {
    for (const Atom& y : b.atoms()) {
      atoms.push_back({x.value + y.value, x.prob * y.prob});
    }
  }
  DiscreteDist result(std::move(atoms), 1e-9);
  if (result.size() > support_cap) {
    throw LimitExceededError("convolution support " +
                             std::to_string(result.size()) + " exceeds cap " +
                             std::to_string(support_cap));
  }
  return result;
}

DiscreteDist SumDistribution(std::span<const DiscreteDist> ds,
                             std::size_t support_cap) {
  DiscreteDist sum;
  for (const DiscreteDist& d : ds) sum = Convolve(sum, d, support_cap);
  return sum;
}

double SumMomentExact(std::span<const DiscreteDist> ds, PNorm p,
                      std::size_t support_cap) {
  return RawMoment(SumDistribution(ds, support_cap), p);
}

double TailProbability(const DiscreteDist& d, double threshold) {
  double tail = 0.0;
  for (const Atom& a : d.atoms()) {
    if (a.value >= threshold) tail += a.prob;
  }
  return tail;
}

double LpNorm(std::span<const double> loads, PNorm p) {
  double peak = 0.0;
  for (double x : loads) peak = std::max(peak, std::abs(x));
  if (p.is_infinite() || peak == 0.0) return peak;
  double sum = 0.0;
  for (double x : loads) sum += std::pow(std::abs(x) / peak, p.value());
  return peak * RootOf(sum, p);
}

std::size_t ExactNormOutcomeCount(const MachineLoads& loads,
                                  std::size_t outcome_cap) {
  std::size_t count = 1;
  try {
    for (const auto& jobs : loads.per_machine) {
      count = SaturatingMul(count, SumDistribution(jobs, outcome_cap).size());
      if (count > outcome_cap) return std::numeric_limits<std::size_t>::max();
    }
  } catch (const LimitExceededError&) {
    return std::numeric_limits<std::size_t>::max();
  }
  return count;
}

double ExpectedLpNormExact(const MachineLoads& loads, PNorm p,
                           std::size_t outcome_cap) {
  if (loads.per_machine.empty()) {
    throw InvalidArgumentError("at least one machine is required");
  }
  std::vector<DiscreteDist> sums;
  std::size_t count = 1;
  for (const auto& jobs : loads.per_machine) {
    sums.push_back(SumDistribution(jobs, outcome_cap));
    count = SaturatingMul(count, sums.back().size());
    if (count > outcome_cap) {
      throw LimitExceededError(
          "joint outcome space exceeds cap " + std::to_string(outcome_cap) +
          "; use Monte Carlo");
    }
  }

  // Normalize by the largest possible load so that powers stay in range.
  double scale = 0.0;
  for (const DiscreteDist& s : sums) scale = std::max(scale, s.max_value());
  if (scale == 0.0) return 0.0;

  const std::size_t m = sums.size();
  // Per-machine transformed values: (s/scale)^p, or s/scale for p = inf.
  std::vector<std::vector<double>> weight(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (const Atom& a : sums[i].atoms()) {
      const double x = a.value / scale;
      weight[i].push_back(p.is_infinite() ? x : std::pow(x, p.value()));
    }
  }

  std::vector<std::size_t> index(m, 0);
  double expectation = 0.0;
  while (true) {
    double prob = 1.0;
    double stat = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      prob *= sums[i].atoms()[index[i]].prob;
      stat = p.is_infinite() ? std::max(stat, weight[i][index[i]])
                             : stat + weight[i][index[i]];
    }
    expectation += prob * (p.is_infinite() ? stat : RootOf(stat, p));
    std::size_t i = 0;
    while (i < m && ++index[i] == sums[i].size()) index[i++] = 0;
    if (i == m) break;
  }
  return scale * expectation;
}

McEstimate ExpectedLpNormMc(const MachineLoads& loads, PNorm p,
                            std::int64_t samples, std::uint64_t seed) {
  std::vector<std::vector<AtomSampler>> samplers;
  for (const auto& jobs : loads.per_machine) {
    samplers.emplace_back(jobs.begin(), jobs.end());
  }
  return RunChunkedMc(samples, seed,
                      [&](std::int64_t, SplitMix64& rng, Moments& acc) {
                        std::vector<double> machine_loads;
                        machine_loads.reserve(samplers.size());
                        for (const auto& jobs : samplers) {
                          double s = 0.0;
                          for (const AtomSampler& job : jobs) s += job.Draw(rng);
                          machine_loads.push_back(s);
                        }
                        acc.Add(LpNorm(machine_loads, p));
                      });
}

double SolveEpsilonStar(std::span<const DiscreteDist> ds, PNorm p) {
  double scale = 0.0;
  for (const DiscreteDist& d : ds) scale = std::max(scale, d.max_value());
  if (scale == 0.0) {
    throw InvalidArgumentError(
        "eps* is undefined when every variable is identically zero");
  }
  auto residual = [&](double eps) {
    double total = 0.0;
    for (const DiscreteDist& d : ds) total += LFunction(d, eps, p);
    return total - 1.0;
  };

  // Residual is strictly decreasing in eps; grow the bracket until it
  // changes sign.
  double lo = 1e-12 * scale;
  double hi = 1e12 * scale;
  while (residual(lo) < 0.0) lo /= 1e3;
  while (residual(hi) > 0.0) hi *= 1e3;

  constexpr int kMaxIterations = 200;
  constexpr double kResidualTolerance = 1e-10;
  for (int it = 0; it < kMaxIterations; ++it) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    const double r = residual(mid);
    if (std::abs(r) <= kResidualTolerance) return mid;
    if (mid <= lo || mid >= hi) break;
    (r > 0.0 ? lo : hi) = mid;
  }
  throw LimitExceededError("eps* bisection did not reach residual 1e-10");
}

LatalaBounds ComputeLatalaBounds(std::span<const DiscreteDist> ds, PNorm p) {
  if (p.is_infinite()) {
    throw InvalidArgumentError("Latala bounds need finite p");
  }
  LatalaBounds bounds;
  bounds.eps_star = SolveEpsilonStar(ds, p);
  bounds.lower = std::pow(bounds.eps_star / 10.0, p.value());
  bounds.upper = std::pow(std::numbers::e * bounds.eps_star, p.value());
  return bounds;
}

double ExpectedLpNormOfGroupsExact(std::span<const MachineGroup> groups,
                                   PNorm p, std::size_t outcome_cap) {
  const bool use_max = p.is_infinite();
  DiscreteDist total;  // sum (or max) of the per-group statistics
  for (const MachineGroup& g : groups) {
    if (g.copies <= 0) continue;
    const DiscreteDist stat = GroupStatistic(g, p, use_max, outcome_cap);
    if (!use_max) {
      total = Convolve(total, stat, outcome_cap);
      continue;
    }
    std::vector<Atom> combined;
    for (const Atom& x : total.atoms()) {
      for (const Atom& y : stat.atoms()) {
        combined.push_back({std::max(x.value, y.value), x.prob * y.prob});
      }
    }
    total = DiscreteDist(std::move(combined), 1e-9);
    if (total.size() > outcome_cap) {
      throw LimitExceededError("group outcome space exceeds cap");
    }
  }
  double expectation = 0.0;
  for (const Atom& a : total.atoms()) {
    expectation += a.prob * (use_max ? a.value : RootOf(a.value, p));
  }
  return expectation;
}

McEstimate ExpectedLpNormOfGroupsMc(std::span<const MachineGroup> groups,
                                    PNorm p, std::int64_t samples,
                                    std::uint64_t seed) {
  const bool use_max = p.is_infinite();
  return RunChunkedMc(
      samples, seed, [&](std::int64_t, SplitMix64& rng, Moments& acc) {
        double stat = 0.0;
        for (const MachineGroup& g : groups) {
          std::int64_t left = g.copies;
          double mass_left = 1.0;
          const auto atoms = g.load.atoms();
          for (std::size_t a = 0; a < atoms.size() && left > 0; ++a) {
            std::int64_t count = left;
            if (a + 1 < atoms.size()) {
              const double q = std::clamp(atoms[a].prob / mass_left, 0.0, 1.0);
              std::binomial_distribution<std::int64_t> draw(left, q);
              count = draw(rng);
            }
            mass_left -= atoms[a].prob;
            left -= count;
            if (count == 0) continue;
            stat = use_max
                       ? std::max(stat, atoms[a].value)
                       : stat + static_cast<double>(count) *
                                    std::pow(atoms[a].value, p.value());
          }
        }
        acc.Add(use_max ? stat : RootOf(stat, p));
      });
}

}  // namespace slb
