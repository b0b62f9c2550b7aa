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


#ifndef MUIND_SRC_COMMANDS_HPP
#define MUIND_SRC_COMMANDS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "muind/spec_format.hpp"
#include "report.hpp"

namespace muind {

Report cmd_indep(const StructureSpec& spec, const std::string& a, const std::string& base,
                 const std::string& other, IndependenceKind kind);

Report cmd_counterexample(std::size_t levels, const std::optional<std::vector<Integer>>& sizes);

struct BranchArgs {
  std::string sub;  // verify | orbits | smallness | mu-checks | rank | rist | rist-level
  std::string point, base, other, pool;
  std::string vertex = "root";
  std::size_t level = 0;
  std::size_t bound = 3;
};
Report cmd_branch(const StructureSpec& spec, const BranchArgs& args);

struct RankArgs {
  std::string point, base, pool;
  std::size_t bound = 3;
  std::size_t subsets = 0;  // 0: one point per step
  bool witness = false;     // product family: residue-collision chains
};
Report cmd_rank(const StructureSpec& spec, const RankArgs& args);

Report cmd_accept(const std::vector<int>& only, bool list_only);

Report cmd_check_report(const std::string& json_text);

}  // namespace muind

#endif  // MUIND_SRC_COMMANDS_HPP
