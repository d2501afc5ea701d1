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


#include "slb/assignment.h"

#include <algorithm>
#include <cmath>

#include "slb/errors.h"

namespace slb {

double AssignmentPolytopeViolation(const FractionalAssignment& x) {
  const int m = x.num_machines();
  const int n = x.num_jobs();
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (int i = 0; i < m; ++i) {
      const double v = x.x[i][j];
      worst = std::max({worst, -v, v - 1.0});
      col += v;
    }
    worst = std::max(worst, std::abs(col - 1.0));
  }
  return worst;
}

FractionalAssignment ToFractional(const IntegralAssignment& a, int m) {
  const int n = static_cast<int>(a.machine_of.size());
  FractionalAssignment out{Matrix(m, std::vector<double>(n, 0.0))};
  for (int j = 0; j < n; ++j) {
    const int i = a.machine_of[j];
    if (i < 0 || i >= m) {
      throw InvalidArgumentError("job " + std::to_string(j) +
                                 " assigned to machine out of range");
    }
    out.x[i][j] = 1.0;
  }
  return out;
}

}  // namespace slb
