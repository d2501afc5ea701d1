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

#ifndef SLB_ERRORS_H_
#define SLB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace slb {

// Bad input: malformed distributions, out-of-range parameters, schema errors.
class InvalidArgumentError : public std::invalid_argument {
 public:
  explicit InvalidArgumentError(const std::string& what)
      : std::invalid_argument(what) {}
};

// A configured size or iteration cap was hit (support cap, pivot cap, ...).
// Callers are expected to fall back (e.g. to Monte Carlo) or raise the cap.
class LimitExceededError : public std::runtime_error {
 public:
  explicit LimitExceededError(const std::string& what)
      : std::runtime_error(what) {}
};

// Floating-point overflow while evaluating a functional.
class OverflowError : public std::overflow_error {
 public:
  explicit OverflowError(const std::string& what)
      : std::overflow_error(what) {}
};

// The problem has no solution (infeasible LP bracket, empty region, ...).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace slb

#endif  // SLB_ERRORS_H_
