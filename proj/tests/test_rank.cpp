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

#include "doctest.h"
#include "gen.hpp"
#include "muind/errors.hpp"
#include "muind/rank.hpp"

using namespace muind;

namespace {

struct BinaryFixture {
  std::shared_ptr<const TruncatedTreeGroup> g =
      std::make_shared<const TruncatedTreeGroup>(TruncatedTreeGroup::full_automorphisms(Arity::constant(2), 5));
  std::shared_ptr<BranchOracle> oracle = std::make_shared<BranchOracle>(g);
};

}  // namespace

TEST_CASE("candidate pools") {
  auto single = CandidatePool::single({0, 1, 2});
  CHECK(single.extensions({1}) == std::vector<PointSet>{{0, 1}, {1, 2}});
  CHECK(single.extensions({0, 1, 2}).empty());
  auto pairs = CandidatePool::subsets({0, 1, 2}, 2);
  CHECK(pairs.extensions({}).size() == 6);
  CHECK(pairs.extensions({}).back() == PointSet{1, 2});
}

TEST_CASE("ray ranks on the binary tree") {
  BinaryFixture fx;
  PointId left = fx.oracle->add({{}, BoundaryPoint::Tail::kLeft, {}});
  PointId right = fx.oracle->add({{}, BoundaryPoint::Tail::kRight, {}});
  PointId mid = fx.oracle->add({{0, 1}, BoundaryPoint::Tail::kRight, {}});
  PointSet pool{left, right, mid};
  CachedOracle cached(fx.oracle);
  auto one = mu_rank(cached, {left}, {}, CandidatePool::single(pool), 3);
  CHECK(one.exact());
  CHECK(one.value == 1);
  auto pair = mu_rank(cached, {left, right}, {}, CandidatePool::single(pool), 3);
  CHECK(pair.value == 2);
  auto zero = mu_rank(cached, {left}, {left}, CandidatePool::single(pool), 3);
  CHECK(zero.value == 0);
  CHECK(cached.hits() > 0);
}

TEST_CASE("product family rank reaches the search bound") {
  auto oracle = std::make_shared<ProductOracle>(ProductStructure(LevelSizes::geometric(2, 1)));
  ProductPoint c{{}, TailSelector::first()};
  PointId cid = oracle->add(c);
  PointSet pool;
  for (const auto& p : residue_collision_points(oracle->structure(), c, 4)) pool.push_back(oracle->add(p));
  auto r = mu_rank(*oracle, {cid}, {}, CandidatePool::single(pool), 4);
  CHECK(r.kind == RankResult::Kind::kAtLeast);
  CHECK(r.value == 4);
  auto w = product_infinite_rank(*oracle, {c}, 5);
  CHECK(w.kind == RankResult::Kind::kInfiniteWitnessed);
  CHECK(w.value == 5);
  CHECK(w.step_details.size() == 5);
}

TEST_CASE("finite groups: every query is mu-independent") {
  auto s4 = FiniteAction::symmetric(4);
  auto fi = finite_independence(s4, {0}, {2}, {1});
  CHECK(fi.measure == Rational(2, 3));
  CHECK(fi.orbit_over_a == 3);
  CHECK(fi.orbit_over_ab == 2);
  FiniteOracle oracle(s4);
  CHECK(oracle.mu({0}, {}, {1}) == Verdict::kIndependent);
  CHECK(oracle.nm({0}, {}, {1}) == Verdict::kIndependent);
  auto r = mu_rank(oracle, {0}, {}, CandidatePool::single({0, 1, 2, 3}), 3);
  CHECK(r.value == 0);
}

TEST_CASE("pregeometry: boundary rays form a trivial pregeometry") {
  BinaryFixture fx;
  gen::Gen gen(41);
  PointSet pool;
  for (const auto& r : gen.rays(2, 6, 4)) pool.push_back(fx.oracle->add(r));
  CachedOracle cached(fx.oracle);
  auto rep = pregeometry_check(cached, pool, {});
  CHECK(rep.passed());
  CHECK(rep.trivial);
  for (const auto& [s, cl] : rep.closures) CHECK(cl == s);
}

TEST_CASE("pregeometry negative control fails exchange") {
  auto oracle = ClosureOracle::exchange_counterexample();
  auto rep = pregeometry_check(*oracle, {0, 1, 2}, {});
  CHECK_FALSE(rep.exchange.passed);
  CHECK(rep.extensive.passed);
  CHECK(rep.monotone.passed);
  CHECK(rep.exchange.witness.find("0 not in cl({2})") != std::string::npos);
}

TEST_CASE("pregeometry refuses rank-2 pools") {
  auto oracle = std::make_shared<ProductOracle>(ProductStructure(LevelSizes::geometric(2, 1)));
  ProductPoint c{{}, TailSelector::first()};
  PointSet pool{oracle->add(c)};
  for (const auto& p : residue_collision_points(oracle->structure(), c, 2)) pool.push_back(oracle->add(p));
  CHECK_THROWS_AS(pregeometry_check(*oracle, make_set(pool), {}), InputError);
}

TEST_CASE("property: Lascar inequalities on random boundary samples") {
  BinaryFixture fx;
  gen::Gen gen(42);
  PointSet pool;
  for (const auto& r : gen.rays(2, 6, 4)) pool.push_back(fx.oracle->add(r));
  CachedOracle cached(fx.oracle);
  std::vector<LascarSample> samples;
  for (int t = 0; t < 25; ++t) {
    PointSet a{pool[gen.below(pool.size())]};
    PointSet b{pool[gen.below(pool.size())]};
    if (gen.coin()) b.push_back(pool[gen.below(pool.size())]);
    PointSet base;
    if (gen.coin()) base.push_back(pool[gen.below(pool.size())]);
    samples.push_back({a, make_set(b), make_set(base)});
  }
  auto rank = [&](const PointSet& a, const PointSet& base) {
    return mu_rank(cached, a, base, CandidatePool::single(pool), 4);
  };
  auto rep = lascar_check(cached, rank, samples);
  CHECK(rep.passed());
  CHECK(rep.checked == 25);
}

TEST_CASE("generic orbits by left translation") {
  auto s4 = FiniteAction::symmetric(4);
  auto r = generic_orbit_check(s4, Perm::from_cycles(4, {{0, 1}}), {Perm::identity(4)});
  CHECK(r.measure == Rational(1, 24));
  CHECK(r.positive);
  CHECK(r.agree);
  CHECK(product_orbit_measure(LevelSizes::geometric(2, 1), true).sign == ProductSign::kZero);
  CHECK(product_orbit_measure(LevelSizes::geometric(2, 1), false).sign == ProductSign::kPositive);
}
