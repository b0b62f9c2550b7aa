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

#include <string>

#include "commands.hpp"
#include "doctest.h"
#include "muind/acceptance.hpp"
#include "muind/errors.hpp"
#include "muind/spec_format.hpp"
#include "report.hpp"

using namespace muind;

namespace {

const char* kProduct =
    "kind = product-symmetric\n"
    "growth = geometric\n"
    "base = 2\n"
    "depth = 12\n";

const char* kBinary =
    "kind = tree-full-aut\n"
    "arity = 2\n"
    "depth = 4\n";

// Line and field of the ParseError thrown for `text`.
std::pair<std::size_t, std::string> parse_failure(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    return {e.line(), e.field()};
  }
  return {0, "<none>"};
}

void round_trip(const Report& r) {
  auto reparsed = Json::parse(r.json.dump());
  auto problems = check_report(reparsed);
  for (const auto& p : problems) CAPTURE(p);
  CHECK(problems.empty());
}

}  // namespace

TEST_CASE("spec parsing by kind") {
  auto p = parse_spec(kProduct);
  CHECK(p.kind == StructureSpec::Kind::kProductSymmetric);
  CHECK(p.product->report_depth() == 12);
  auto t = parse_spec(kBinary);
  CHECK(t.is_tree());
  CHECK(t.tree->whole().order() == 32768);
  auto f = parse_spec("kind = finite-perm\npoints = a b c\ngen x = (a b c)\n");
  CHECK(f.action->order() == 3);
  auto r = parse_spec("kind = tree-recursion\narity = 2\ndepth = 3\ngen a = 1 0 | e e\n");
  CHECK(r.tree->whole().order() == 2);
}

TEST_CASE("spec diagnostics carry line and field") {
  CHECK(parse_failure("kind = tree-full-aut\narity = 2\ndepth = 3\narity = 3\n") == std::pair<std::size_t, std::string>{4, "arity"});
  CHECK(parse_failure("# comment\nkind = product-symmetric\ngrowth = cubic\n") == std::pair<std::size_t, std::string>{3, "growth"});
  CHECK(parse_failure("kind = product-symmetric\ngrowth = geometric\nbase = 2\nprefix = 2 4 9\n") ==
        std::pair<std::size_t, std::string>{4, "prefix"});
  CHECK(parse_failure("kind = tree-full-aut\narity = 2\ndepth = 3\nbase = 2\n") == std::pair<std::size_t, std::string>{4, "base"});
  CHECK(parse_failure("kind = finite-perm\npoints = a b\ngen x = (a c)\n") == std::pair<std::size_t, std::string>{3, "gen x"});
  CHECK(parse_failure("arity = 2\n").second == "kind");
  CHECK(parse_failure("kind = tree-full-aut\nno equals sign\n").first == 2);
}

TEST_CASE("depth override") {
  CHECK(parse_spec(kBinary, 2).tree->depth() == 2);
  CHECK(parse_spec(kProduct, 30).product->report_depth() == 30);
  CHECK_THROWS_AS(parse_spec("kind = finite-perm\npoints = a b\ngen x = (a b)\n", 3), ParseError);
}

TEST_CASE("point syntax") {
  auto p = parse_product_point("1,3;last");
  CHECK(p.coords.size() == 2);
  CHECK(p.tail == TailSelector::last());
  CHECK(parse_product_point("k3").tail == TailSelector::kth(3));
  CHECK(parse_product_point("2,2").tail.is_none());
  CHECK(parse_product_point("cycle(first,last)").tail.period() == 2);
  CHECK(parse_product_points("first  last 1;k2").size() == 3);
  auto b = parse_boundary_point("0.1.1;left");
  CHECK(b.path == Path{0, 1, 1});
  CHECK(b.tail == BoundaryPoint::Tail::kLeft);
  CHECK(parse_boundary_point("cycle(0,1)").cycle == std::vector<unsigned>{0, 1});
  CHECK(parse_boundary_points("left right 1;cycle(1,0)").size() == 3);
  CHECK_THROWS_AS(parse_product_point("1,x;last"), InputError);
  CHECK_THROWS_AS(parse_boundary_points("cycle(0,1"), InputError);
}

TEST_CASE("indep reports re-verify and reject tampering") {
  auto spec = parse_spec(kProduct);
  for (auto kind : {IndependenceKind::kMu, IndependenceKind::kNm, IndependenceKind::kM}) {
    auto r = cmd_indep(spec, "last", "", "first", kind);
    CHECK(r.status == Status::kDecided);
    round_trip(r);
  }
  auto r = cmd_indep(spec, "last", "", "first", IndependenceKind::kMu);
  CHECK(r.json["verdict"] == "independent");
  Json bad = r.json;
  bad["certificate"]["rows"][2]["ratio"] = Json::array({"1", "2"});
  CHECK_FALSE(check_report(bad).empty());
  Json flipped = r.json;
  flipped["verdict"] = "dependent";
  CHECK_FALSE(check_report(flipped).empty());
}

TEST_CASE("undecidable tails give unknown") {
  auto spec = parse_spec(kProduct);
  auto r = cmd_indep(spec, "1,2", "", "first", IndependenceKind::kMu);
  CHECK(r.status == Status::kUnknown);
  CHECK(r.json["verdict"] == "unknown");
  round_trip(r);
}

TEST_CASE("reports are deterministic") {
  auto spec = parse_spec(kBinary);
  BranchArgs args;
  args.sub = "smallness";
  args.base = "left";
  CHECK(cmd_branch(spec, args).json.dump() == cmd_branch(spec, args).json.dump());
  RankArgs ra;
  ra.point = "first";
  ra.bound = 3;
  auto p = parse_spec(kProduct);
  CHECK(cmd_rank(p, ra).json.dump() == cmd_rank(p, ra).json.dump());
}

TEST_CASE("counterexample reports") {
  auto empty = cmd_counterexample(0, std::nullopt);
  CHECK(empty.json["certificate"]["rows"].empty());
  CHECK(rational_from_json(empty.json["certificate"]["running"]) == 1);
  round_trip(empty);
  auto five = cmd_counterexample(5, std::nullopt);
  CHECK(five.json["verdict"] == "exceeds-half");
  round_trip(five);
}

TEST_CASE("branch reports") {
  auto spec = parse_spec(kBinary);
  for (std::string sub : {"verify", "orbits", "smallness", "mu-checks", "rank", "rist", "rist-level"}) {
    CAPTURE(sub);
    BranchArgs args;
    args.sub = sub;
    args.point = "left";
    args.base = "right";
    args.vertex = "0.1";
    args.level = 3;
    auto r = cmd_branch(spec, args);
    CHECK(r.status == Status::kDecided);
    round_trip(r);
  }
  BranchArgs smallness;
  smallness.sub = "smallness";
  smallness.base = "left";
  CHECK(cmd_branch(spec, smallness).json["certificate"]["orbits"].size() == 5);
  BranchArgs rank;
  rank.sub = "rank";
  rank.point = "left";
  CHECK(cmd_branch(spec, rank).json["rank"]["value"] == 1);
}

TEST_CASE("rank reports") {
  auto p = parse_spec(kProduct);
  RankArgs witness;
  witness.point = "first";
  witness.bound = 4;
  witness.witness = true;
  auto r = cmd_rank(p, witness);
  CHECK(r.json["verdict"] == "infinite-witnessed(4)");
  round_trip(r);
  Json bad = r.json;
  bad["rank"]["steps"][0] = "independent: tampered";
  CHECK_FALSE(check_report(bad).empty());
}

TEST_CASE("acceptance listing and check-report") {
  auto list = cmd_accept({}, true);
  CHECK(list.json["criteria"].size() == 9);
  round_trip(list);
  auto ok = cmd_check_report(cmd_counterexample(3, std::nullopt).json.dump());
  CHECK(ok.status == Status::kDecided);
  auto garbage = cmd_check_report("{\"schema\": \"other\"}");
  CHECK(garbage.status == Status::kError);
}

TEST_CASE("mutations are caught by the acceptance criteria") {
  AcceptanceOptions tampered;
  tampered.ratio_offset = Rational(1, 1000);
  auto c1 = run_criterion(1, tampered);
  CHECK_FALSE(c1.passed);
  CHECK(c1.detail.find("n = 3") != std::string::npos);
  CHECK_FALSE(run_criterion(3, tampered).passed);

  AcceptanceOptions half;
  half.half_offset = Rational(1, 10);
  CHECK_FALSE(run_criterion(2, half).passed);

  AcceptanceOptions small;
  small.smallness_offset = 1;
  CHECK_FALSE(run_criterion(6, small).passed);

  CHECK(run_criterion(1, {}).passed);
  CHECK(run_criterion(6, {}).passed);
}
