// Copyright 2026 The muind Authors
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


#ifndef MUIND_ACCEPTANCE_HPP
#define MUIND_ACCEPTANCE_HPP

#include <functional>
#include <string>
#include <vector>

#include "muind/rational.hpp"

namespace muind {

struct CriterionInfo {
  int id = 0;
  std::string title;
  double budget_seconds = 0;
};

struct CriterionResult {
  CriterionInfo info;
  bool passed = false;
  bool within_budget = false;
  double seconds = 0;
  std::string detail;
};

// Perturbations injected into the expected constants; all zero for a real run.
struct AcceptanceOptions {
  Rational ratio_offset = 0;     // added to the expected product-set ratio
  Rational half_offset = 0;      // added to the 1/2 threshold
  std::size_t smallness_offset = 0;  // added to the expected orbit counts
  std::uint64_t seed = 20260101;
};

const std::vector<CriterionInfo>& acceptance_criteria();
CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {},
                                            const AcceptanceOptions& options = {});

}  // namespace muind

#endif  // MUIND_ACCEPTANCE_HPP
