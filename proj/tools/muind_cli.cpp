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

// Command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "muind/muind.h"

namespace {

struct Common {
  std::string spec;
  long depth = -1;
  std::string format = "human";
};

struct StructureHandle {
  muind_structure* ptr = nullptr;
  ~StructureHandle() { muind_structure_free(ptr); }
};

int error_exit(muind_status code) {
  std::cerr << "muind: " << muind_last_error() << " (status " << static_cast<int>(code) << ")\n";
  return MUIND_FAILED;
}

// Prints the report and maps its outcome onto the exit status. rep is read
// only after the producing call has run.
int finish(muind_status code, muind_report*& rep, const Common& c) {
  if (code != MUIND_OK) return error_exit(code);
  std::cout << (c.format == "machine" ? muind_report_json(rep) : muind_report_text(rep));
  std::cout << (c.format == "machine" ? "\n" : "");
  std::cout.flush();
  int out = muind_report_outcome(rep);
  muind_report_free(rep);
  return out;
}

void add_common(CLI::App* app, Common& c, bool with_spec) {
  if (with_spec) {
    app->add_option("--spec", c.spec, "structure spec file")->required()->check(CLI::ExistingFile);
    app->add_option("--depth", c.depth, "override the depth of the spec")->check(CLI::Range(1L, 4096L));
  }
  app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"human", "machine"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact independence calculus for permutation-group structures"};
  app.set_version_flag("--version", std::string(muind_version()));
  app.require_subcommand(1);

  Common common;
  std::string point, base, other, pool, kind = "mu", vertex = "root";
  std::size_t bound = 3, subsets = 0, level = 0, levels = 8;
  bool witness = false, list = false;
  std::vector<std::string> sizes;
  std::vector<int> only;
  std::string branch_sub, report_path;

  auto* indep = app.add_subcommand("indep", "decide a independent from B over A");
  add_common(indep, common, true);
  indep->add_option("--point", point, "the tuple a")->required();
  indep->add_option("--base", base, "the base set A");
  indep->add_option("--other", other, "the set B");
  indep->add_option("--kind", kind, "independence notion")->check(CLI::IsMember({"mu", "nm", "m"}));

  auto* cex = app.add_subcommand("counterexample", "per-level table of the mu / nm separating example");
  add_common(cex, common, false);
  cex->add_option("--levels", levels, "number of levels")->check(CLI::Range(0, 4096));
  cex->add_option("--sizes", sizes, "explicit level sizes")->delimiter(',');

  auto* branch = app.add_subcommand("branch", "tree-group queries");
  add_common(branch, common, true);
  branch->add_option("sub", branch_sub, "query")
      ->required()
      ->check(CLI::IsMember({"verify", "orbits", "smallness", "mu-checks", "rank", "rist", "rist-level"}));
  branch->add_option("--point", point, "boundary point or ray");
  branch->add_option("--base", base, "finite set of rays");
  branch->add_option("--other", other, "second set of rays");
  branch->add_option("--pool", pool, "candidate rays for rank");
  branch->add_option("--vertex", vertex, "vertex as a digit path, or root");
  branch->add_option("--level", level, "tree level");
  branch->add_option("--bound", bound, "rank search bound");

  auto* rank = app.add_subcommand("rank", "bounded mu-rank search");
  add_common(rank, common, true);
  rank->add_option("--point", point, "the tuple a")->required();
  rank->add_option("--base", base, "the base set A");
  rank->add_option("--pool", pool, "candidate points");
  rank->add_option("--bound", bound, "search bound")->check(CLI::Range(0, 64));
  rank->add_option("--subsets", subsets, "extend by subsets of this size (0: single points)");
  rank->add_flag("--witness", witness, "residue-collision chain (product family)");

  auto* accept = app.add_subcommand("accept", "run the acceptance criteria");
  add_common(accept, common, false);
  accept->add_flag("--list", list, "list the criteria without running them");
  accept->add_option("--only", only, "criterion ids")->delimiter(',');

  auto* check = app.add_subcommand("check-report", "re-verify a machine-readable report");
  add_common(check, common, false);
  check->add_option("report", report_path, "report file, or - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : MUIND_FAILED;
  }

  muind_report* rep = nullptr;
  if (*cex) {
    std::string joined;
    for (const auto& s : sizes) joined += s + " ";
    return finish(muind_counterexample(levels, sizes.empty() ? nullptr : joined.c_str(), &rep), rep, common);
  }
  if (*accept) return finish(muind_accept(only.data(), only.size(), list ? 1 : 0, &rep), rep, common);
  if (*check) {
    std::string text;
    if (report_path == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
      std::ifstream in(report_path);
      if (!in) {
        std::cerr << "muind: cannot read '" << report_path << "'\n";
        return MUIND_FAILED;
      }
      text.assign(std::istreambuf_iterator<char>(in), {});
    }
    return finish(muind_check_report(text.c_str(), &rep), rep, common);
  }

  StructureHandle s;
  if (auto code = muind_structure_load(common.spec.c_str(), common.depth, &s.ptr); code != MUIND_OK)
    return error_exit(code);

  if (*indep) {
    muind_kind k = kind == "nm" ? MUIND_NM : kind == "m" ? MUIND_M : MUIND_MU;
    return finish(muind_indep(s.ptr, point.c_str(), base.c_str(), other.c_str(), k, &rep), rep, common);
  }
  if (*branch) {
    muind_branch_args args{branch_sub.c_str(), point.c_str(), base.c_str(), other.c_str(),
                           pool.c_str(),       vertex.c_str(), level,        bound};
    return finish(muind_branch(s.ptr, &args, &rep), rep, common);
  }
  muind_rank_args args{point.c_str(), base.c_str(), pool.c_str(), bound, subsets, witness ? 1 : 0};
  return finish(muind_rank(s.ptr, &args, &rep), rep, common);
}
