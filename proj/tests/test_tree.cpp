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

#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "gen.hpp"
#include "muind/errors.hpp"
#include "muind/tree.hpp"

using namespace muind;

namespace {

const BoundaryPoint kLeft{{}, BoundaryPoint::Tail::kLeft, {}};
const BoundaryPoint kRight{{}, BoundaryPoint::Tail::kRight, {}};

std::vector<RecursionGenerator> grigorchuk() {
  return {{"a", {1, 0}, {"e", "e"}}, {"b", {0, 1}, {"a", "c"}}, {"c", {0, 1}, {"a", "d"}}, {"d", {0, 1}, {"e", "b"}}};
}

}  // namespace

TEST_CASE("rooted tree addressing") {
  RootedTree t(Arity({2}, {3}), 3);
  CHECK(t.level_size(3) == 18);
  CHECK(t.stride(1, 3) == 9);
  Vertex v = t.vertex({1, 2, 0});
  CHECK(t.path(v) == Path{1, 2, 0});
  CHECK(t.ancestor(v, 1) == t.vertex({1}));
  CHECK(t.is_below(v, t.vertex({1})));
  for (std::uint64_t id = 0; id < t.vertex_count(); ++id) CHECK(t.id(t.from_id(id)) == id);
}

TEST_CASE("full automorphism group orders") {
  CHECK(TruncatedTreeGroup::full_automorphisms(Arity::constant(2), 3).whole().order() == 128);
  CHECK(TruncatedTreeGroup::full_automorphisms(Arity::constant(3), 2).whole().order() == 1296);
  auto r = verify_branch_axioms(TruncatedTreeGroup::full_automorphisms(Arity({2}, {3}), 3));
  CHECK(r.order == 3359232);
  CHECK(r.rist_index[1] == 2);
  CHECK(r.rist_index[2] == 72);
  CHECK(r.all_transitive);
}

TEST_CASE("binary tree depth 3: rigid stabilizers") {
  auto g = TruncatedTreeGroup::full_automorphisms(Arity::constant(2), 3);
  CHECK(g.rigid_stabilizer(g.tree().vertex({0})).order() == 8);
  CHECK(g.rigid_level_stabilizer(1).order() == 64);
  auto r = verify_branch_axioms(g);
  std::vector<Integer> expect{1, 2, 8, 128};
  CHECK(r.rist_index == expect);
  for (bool b : r.rist_product) CHECK(b);
  CHECK(g.conjugation_witness(g.tree().vertex({0, 1}), g.tree().vertex({1, 0})));
}

TEST_CASE("Grigorchuk truncations") {
  std::vector<std::uint64_t> orders{2, 8, 128, 4096};
  for (std::size_t d = 1; d <= 4; ++d) {
    CAPTURE(d);
    CHECK(TruncatedTreeGroup::from_recursion(2, d, grigorchuk()).whole().order() == orders[d - 1]);
  }
  CHECK_THROWS_AS(TruncatedTreeGroup::from_recursion(2, 5, grigorchuk(), 1'000'000), CapacityError);
  auto r = verify_branch_axioms(TruncatedTreeGroup::from_recursion(2, 3, grigorchuk()));
  CHECK(r.all_transitive);
  CHECK(r.rist_index == std::vector<Integer>{1, 2, 8, 128});
}

TEST_CASE("enumerated and portrait forms agree on the full group") {
  std::vector<RecursionGenerator> full{{"s", {1, 0}, {"e", "e"}}, {"t", {0, 1}, {"s", "e"}}, {"u", {0, 1}, {"u", "t"}}};
  auto e = TruncatedTreeGroup::from_recursion(2, 3, full);
  auto p = TruncatedTreeGroup::full_automorphisms(Arity::constant(2), 3);
  CHECK(e.whole().order() == p.whole().order());
  for (std::size_t level = 1; level <= 3; ++level) {
    CAPTURE(level);
    CHECK(e.rigid_level_stabilizer(level - 1).order() == p.rigid_level_stabilizer(level - 1).order());
    auto v = std::vector<Vertex>{e.tree().vertex(Path(level, 0))};
    CHECK(e.stabilizer(v).order() == p.stabilizer(v).order());
  }
}

TEST_CASE("smallness with one ray") {
  for (auto [depth, orbits] : {std::pair<std::size_t, std::size_t>{4, 5}, {5, 6}}) {
    auto g = TruncatedTreeGroup::full_automorphisms(Arity::constant(2), depth);
    auto s = smallness_profile(g, {kLeft}, depth);
    CHECK(s.orbits.size() == orbits);
    CHECK(s.predicted == orbits);
    CHECK(s.matches_prediction);
    CHECK(s.linear_envelope);
    std::size_t leaves = 0;
    for (const auto& o : s.orbits) leaves += o.size();
    CHECK(leaves == g.tree().level_size(depth));
  }
}

TEST_CASE("boundary points") {
  Arity two = Arity::constant(2);
  BoundaryPoint p{{0, 1}, BoundaryPoint::Tail::kCycle, {1, 0}};
  CHECK(p.prefix(two, 5) == Path{0, 1, 1, 0, 1});
  CHECK(*separation_level(two, kLeft, kRight) == 1);
  CHECK(*separation_level(two, kLeft, BoundaryPoint{{0, 0, 1}, BoundaryPoint::Tail::kLeft, {}}) == 3);
  CHECK(same_ray(two, kLeft, BoundaryPoint{{0, 0}, BoundaryPoint::Tail::kLeft, {}}));
  BoundaryPoint open{{1}, BoundaryPoint::Tail::kNone, {}};
  CHECK_THROWS_AS(open.prefix(two, 3), UndecidableError);
  CHECK_THROWS_AS((BoundaryPoint{{2}, BoundaryPoint::Tail::kLeft, {}}.validate(two)), InputError);
}

TEST_CASE("branch independence on the binary tree") {
  auto g = TruncatedTreeGroup::full_automorphisms(Arity::constant(2), 4);
  auto ind = branch_independence(g, {kLeft}, {}, {kRight});
  CHECK(ind.mu == Verdict::kIndependent);
  CHECK(ind.nm == Verdict::kIndependent);
  CHECK(*ind.open_witness == 1);
  auto dep = branch_independence(g, {kRight}, {}, {kRight});
  CHECK(dep.mu == Verdict::kDependent);
  CHECK_FALSE(dep.acl_member);
  CHECK(branch_independence(g, {kRight}, {kRight}, {}).acl_member);
  CHECK(boundary_mu_checks(g, kRight, {kRight}).acl_member);
  auto checks = boundary_mu_checks(g, kLeft, {kRight});
  CHECK(checks.verdict.mu == Verdict::kIndependent);
  CHECK(checks.stabilizer_indices == std::vector<Integer>{2, 4, 8, 16});
}

TEST_CASE("property: independence iff the ray is outside F, and mu agrees with nm") {
  gen::Gen gen(31);
  auto g = TruncatedTreeGroup::full_automorphisms(Arity::constant(2), 5);
  Arity two = Arity::constant(2);
  for (int t = 0; t < 40; ++t) {
    CAPTURE(t);
    auto rays = gen.rays(2, 4, 4);
    BoundaryPoint delta = gen.coin() ? rays[0] : gen.ray(2, 4);
    std::vector<BoundaryPoint> f(rays.begin(), rays.end());
    bool inside = std::any_of(f.begin(), f.end(), [&](const BoundaryPoint& x) { return same_ray(two, x, delta); });
    auto c = boundary_mu_checks(g, delta, f);
    CHECK((c.verdict.mu == Verdict::kIndependent) == !inside);
    CHECK(c.verdict.mu == c.verdict.nm);
    CHECK(c.acl_member == inside);
  }
}

TEST_CASE("non-branch recursion leaves mu open") {
  // The adding machine: a level-transitive group with trivial rigid stabilizers.
  std::vector<RecursionGenerator> odometer{{"a", {1, 0}, {"e", "a"}}};
  auto g = TruncatedTreeGroup::from_recursion(2, 4, odometer);
  CHECK(g.whole().order() == 16);
  auto v = branch_independence(g, {kLeft}, {}, {kRight});
  CHECK(v.mu == Verdict::kUnknown);
}
