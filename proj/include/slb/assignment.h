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


#ifndef SLB_ASSIGNMENT_H_
#define SLB_ASSIGNMENT_H_

#include <vector>

namespace slb {

// Row-major m x n real matrix, indexed [machine][job].
using Matrix = std::vector<std::vector<double>>;

// x[i][j] is the share of job j placed on machine i; every column sums to 1.
struct FractionalAssignment {
  Matrix x;

  int num_machines() const { return static_cast<int>(x.size()); }
  int num_jobs() const { return x.empty() ? 0 : static_cast<int>(x[0].size()); }
};

// machine_of[j] in [0, m).
struct IntegralAssignment {
  std::vector<int> machine_of;

  friend bool operator==(const IntegralAssignment&,
                         const IntegralAssignment&) = default;
};

// Largest |sum_i x[i][j] - 1| over jobs, or the largest bound violation
// outside [0, 1], whichever is bigger.
double AssignmentPolytopeViolation(const FractionalAssignment& x);

FractionalAssignment ToFractional(const IntegralAssignment& a, int m);

}  // namespace slb

#endif  // SLB_ASSIGNMENT_H_
