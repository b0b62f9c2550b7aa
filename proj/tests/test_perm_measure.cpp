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
#include <set>

#include "doctest.h"
#include "gen.hpp"
#include "muind/errors.hpp"
#include "muind/measure.hpp"
#include "muind/perm.hpp"
#include "muind/rational.hpp"

using namespace muind;

TEST_CASE("perm composition acts on the left") {
  Perm a = Perm::from_cycles(3, {{0, 1}});
  Perm b = Perm::from_cycles(3, {{1, 2}});
  Perm ab = a * b;
  for (Point x = 0; x < 3; ++x) CHECK(ab(x) == a(b(x)));
  CHECK((a * a).is_identity());
  CHECK_THROWS_AS(Perm({0, 0, 1}), InputError);
}

TEST_CASE("symmetric group orders and stabilizers") {
  auto s6 = FiniteAction::symmetric(6);
  CHECK(s6->order() == 720);
  CHECK(s6->orbit_stabilizer_order() == 720);
  CHECK(pointwise_stabilizer(s6, Tuple{0, 1}).order() == 24);

  Subgroup h1 = pointwise_stabilizer(s6, Tuple{5});
  Subgroup h2 = pointwise_stabilizer(s6, Tuple{0});
  CHECK(product_set(h1, h2).size() == 600);
  CHECK(NormalizedMeasure(Subgroup::whole(s6))(product_set(h1, h2)) == Rational(5, 6));

  auto s4 = FiniteAction::symmetric(4);
  CHECK(index(Subgroup::whole(s4), pointwise_stabilizer(s4, Tuple{0, 1})) == 12);
}

TEST_CASE("capacity cap is enforced") {
  CHECK_THROWS_AS(FiniteAction::symmetric(7, 100), CapacityError);
}

TEST_CASE("property: |H1 H2| = |H1||H2| / |H1 n H2| for random subgroups") {
  gen::Gen g(11);
  auto s5 = FiniteAction::symmetric(5);
  for (int t = 0; t < 40; ++t) {
    CAPTURE(t);
    Subgroup h1 = Subgroup::generated_by(s5, {g.perm(5)});
    Subgroup h2 = Subgroup::generated_by(s5, {g.perm(5), g.perm(5)});
    if (g.coin()) h2 = pointwise_stabilizer(s5, g.points(5, g.between(0, 3)));
    Subgroup meet = intersection(h1, h2);
    CHECK(product_set(h1, h2).size() * meet.order() == h1.order() * h2.order());
    CHECK(meet.is_subset_of(h1));
    CHECK(meet.is_subset_of(h2));
  }
}

TEST_CASE("property: orbit-stabilizer for tuples") {
  gen::Gen g(12);
  auto s6 = FiniteAction::symmetric(6);
  for (int t = 0; t < 30; ++t) {
    CAPTURE(t);
    Subgroup h = Subgroup::generated_by(s6, {g.perm(6), g.perm(6)});
    Tuple a = g.points(6, g.between(1, 3));
    auto o = orbit(h, a);
    std::uint64_t stab = 0;
    for (const auto& e : h.elements()) stab += e.fixes(a) ? 1 : 0;
    CHECK(o.size() * stab == h.order());
  }
}

TEST_CASE("property: normalized measure is left-invariant") {
  gen::Gen g(13);
  auto s5 = FiniteAction::symmetric(5);
  NormalizedMeasure m(Subgroup::whole(s5));
  for (int t = 0; t < 20; ++t) {
    Subgroup h1 = pointwise_stabilizer(s5, g.points(5, g.between(0, 2)));
    Subgroup h2 = pointwise_stabilizer(s5, g.points(5, g.between(0, 2)));
    ElementSet p = product_set(h1, h2);
    CHECK(m(p.left_translate(g.perm(5))) == m(p));
    CHECK(m(p.inverted()) == m(product_set(h2, h1)));
  }
}

TEST_CASE("double coset ratio closed form") {
  CHECK(double_coset_ratio(8, 1, 2, 2, 1) == Rational(5, 42));
  CHECK(double_coset_ratio(6, 0, 1, 1, 1) == Rational(5, 6));
  CHECK(double_coset_ratio(7, 2, 1, 3, 2) == Rational(1, 5));
  CHECK(double_coset_ratio(5, 1, 2, 0, 0) == 1);
  CHECK_THROWS_AS(double_coset_ratio(3, 1, 1, 1, 1), InputError);
  CHECK_THROWS_AS(double_coset_ratio(8, 1, 1, 1, 2), InputError);
}

TEST_CASE("property: closed form agrees with enumeration in S_6") {
  auto s6 = FiniteAction::symmetric(6);
  gen::Gen g(14);
  for (int t = 0; t < 60; ++t) {
    // Random A, B, C as point sets; counts read off directly.
    Tuple a = g.points(6, g.between(0, 2));
    Tuple b = g.points(6, g.between(0, 3)), c = g.points(6, g.between(0, 3));
    std::set<Point> sa(a.begin(), a.end()), sb(b.begin(), b.end()), sc(c.begin(), c.end());
    std::uint64_t q = 0, r = 0, rp = 0;
    for (Point x : sb) q += sa.count(x) ? 0 : 1;
    for (Point x : sc) {
      if (sa.count(x)) continue;
      ++r;
      rp += sb.count(x) ? 0 : 1;
    }
    std::uint64_t p = sa.size();
    if (p + q + r >= 6) continue;
    Tuple ab(sa.begin(), sa.end()), ac(sa.begin(), sa.end());
    for (Point x : sb) if (!sa.count(x)) ab.push_back(x);
    for (Point x : sc) if (!sa.count(x)) ac.push_back(x);
    Subgroup ga = pointwise_stabilizer(s6, a);
    Rational m = NormalizedMeasure(ga)(product_set(pointwise_stabilizer(s6, ab), pointwise_stabilizer(s6, ac)));
    if (r - rp <= q) {
      CAPTURE(t);
      CHECK(m == double_coset_ratio(6, p, q, r, rp));
    }
  }
}

TEST_CASE("level sizes") {
  auto geo = LevelSizes::geometric(2, 1);
  CHECK(*geo.at(0) == 2);
  CHECK(*geo.at(3) == 16);
  auto lin = LevelSizes::linear(3, 2);
  CHECK(*lin.at(4) == 14);
  auto per = LevelSizes::periodic({to_integer(3), to_integer(5)});
  CHECK(*per.at(7) == 5);
  CHECK(per.period() == 2);
  auto tab = LevelSizes::table({to_integer(4), to_integer(8)});
  CHECK(!tab.at(2).has_value());
  CHECK_THROWS_AS(tab.at_checked(2), UndecidableError);
}

TEST_CASE("infinite product verdicts") {
  auto geo = LevelSizes::geometric(2, 1);
  SUBCASE("convergent comparison sum gives a positive product with bracketing bounds") {
    RatioSequence seq{{}, RatioTail{0, {SliceFamily{0, 1, 1, 1}}}, geo};
    auto v = infinite_product_verdict(seq);
    CHECK(v.sign == ProductSign::kPositive);
    CHECK(v.certificate == TailCertificate::kComparisonSumConverges);
    CHECK(v.lower <= v.upper);
    auto tight = infinite_product_verdict(seq, 30);
    CHECK(tight.lower >= v.lower);
    CHECK(tight.upper <= v.upper);
    CHECK(tight.lower > Rational(288787, 1000000));
    CHECK(tight.upper < Rational(288789, 1000000));
  }
  SUBCASE("a zero factor kills the product") {
    RatioSequence seq{{Rational(1, 2), Rational(0)}, RatioTail{2, {ConstantFamily{1}}}, geo};
    auto v = infinite_product_verdict(seq);
    CHECK(v.sign == ProductSign::kZero);
    CHECK(v.certificate == TailCertificate::kZeroFactor);
  }
  SUBCASE("a constant deficient tail diverges") {
    RatioSequence seq{{}, RatioTail{0, {ConstantFamily{Rational(1, 2)}}}, geo};
    CHECK(infinite_product_verdict(seq).sign == ProductSign::kZero);
  }
  SUBCASE("singleton measures vanish") {
    RatioSequence seq{{}, RatioTail{0, {InverseFactorialFamily{}}}, geo};
    CHECK(infinite_product_verdict(seq).sign == ProductSign::kZero);
  }
  SUBCASE("no tail information is undecidable") {
    RatioSequence seq{{Rational(1, 2)}, std::nullopt, std::nullopt};
    CHECK(infinite_product_verdict(seq).sign == ProductSign::kUnknown);
  }
}
