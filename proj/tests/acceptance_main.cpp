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

// One PASS / FAIL line per acceptance criterion. Budgets live with the
// criteria; a criterion over its budget fails.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "muind/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& r : muind::run_acceptance(only, {})) {
    bool ok = r.passed && r.within_budget;
    failed += ok ? 0 : 1;
    std::printf("%s criterion %d: %s [%.2f s, budget %.0f s] %s\n", ok ? "PASS" : "FAIL", r.info.id,
                r.info.title.c_str(), r.seconds, r.info.budget_seconds, r.detail.c_str());
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
