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


#include "slb/random_instances.h"

#include "slb/errors.h"

namespace slb {

DiscreteDist RandomDist(SplitMix64& rng, int max_support, double max_value) {
  if (max_support < 1 || !(max_value >= 0.0)) {
    throw InvalidArgumentError("RandomDist: bad support or value range");
  }
  const int support = 1 + static_cast<int>(rng.Below(max_support));
  std::vector<Atom> atoms;
  double weight = 0.0;
  for (int k = 0; k < support; ++k) {
    double value = max_value * rng.Uniform();
    if (k == 0 && support > 1 && rng.Uniform() < 0.3) value = 0.0;
    const double w = 0.05 + rng.Uniform();
    atoms.push_back({value, w});
    weight += w;
  }
  for (Atom& a : atoms) a.prob /= weight;
  return DiscreteDist(std::move(atoms), 1e-9);
}

std::vector<DiscreteDist> RandomFamily(SplitMix64& rng, int max_count,
                                       int max_support, double max_value) {
  const int count = 1 + static_cast<int>(rng.Below(max_count));
  std::vector<DiscreteDist> out;
  for (int k = 0; k < count; ++k) {
    out.push_back(RandomDist(rng, max_support, max_value));
  }
  return out;
}

LbInstance RandomInstance(int m, int n, int max_support, double max_value,
                          std::uint64_t seed) {
  if (m < 1 || n < 1) throw InvalidArgumentError("need m >= 1 and n >= 1");
  SplitMix64 rng(seed);
  LbInstance inst;
  inst.m = m;
  inst.n = n;
  inst.jobs.assign(m, std::vector<DiscreteDist>(n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      inst.jobs[i][j] = RandomDist(rng, max_support, max_value);
    }
  }
  return inst;
}

}  // namespace slb
