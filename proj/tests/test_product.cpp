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
#include "muind/product.hpp"

using namespace muind;

namespace {

const ProductStructure& pow2() {
  static const ProductStructure s(LevelSizes::geometric(2, 1));
  return s;
}

ProductPoint pt(TailSelector t, std::vector<Integer> coords = {}) { return ProductPoint{std::move(coords), t}; }

ProductPointSet join(ProductPointSet x, const ProductPointSet& y) {
  x.insert(x.end(), y.begin(), y.end());
  return x;
}

bool decided(const IndependenceVerdict& v) { return v.verdict != Verdict::kUnknown; }

}  // namespace

TEST_CASE("last against first separates mu from nm and m") {
  ProductPointSet a{pt(TailSelector::last())}, b{pt(TailSelector::first())};
  auto mu = mu_independent(pow2(), a, {}, b);
  CHECK(mu.verdict == Verdict::kIndependent);
  REQUIRE(mu.product.has_value());
  CHECK(mu.product->sign == ProductSign::kPositive);
  CHECK(mu.product->lower > Rational(288787, 1000000));
  CHECK(nm_independent(pow2(), a, {}, b).verdict == Verdict::kDependent);
  CHECK(m_independent(pow2(), a, {}, b).verdict == Verdict::kDependent);
}

TEST_CASE("a point of the base is independent for every kind") {
  ProductPointSet a{pt(TailSelector::kth(2), {to_integer(1)})};
  ProductPointSet b{pt(TailSelector::first()), pt(TailSelector::last())};
  for (auto k : {IndependenceKind::kMu, IndependenceKind::kNm, IndependenceKind::kM})
    CHECK(independent(k, pow2(), a, a, b).verdict == Verdict::kIndependent);
}

TEST_CASE("a coordinate shared with B on every level is mu-dependent") {
  ProductPointSet a{pt(TailSelector::first(), {to_integer(2)})}, b{pt(TailSelector::first())};
  auto v = mu_independent(pow2(), a, {}, b);
  CHECK(v.verdict == Verdict::kDependent);
  CHECK(v.deficiency.infinite());
}

TEST_CASE("points without a tail are undecidable") {
  ProductPointSet a{pt(TailSelector::none(), {to_integer(1)})}, b{pt(TailSelector::first())};
  CHECK_THROWS_AS(mu_independent(pow2(), a, {}, b), UndecidableError);
}

TEST_CASE("a finite table of sizes leaves the tail unknown") {
  ProductStructure s(LevelSizes::table({to_integer(4), to_integer(8)}));
  ProductPointSet a{pt(TailSelector::last())}, b{pt(TailSelector::first())};
  CHECK(mu_independent(s, a, {}, b).verdict == Verdict::kUnknown);
}

TEST_CASE("validation rejects coordinates outside the level") {
  CHECK_THROWS_AS(pow2().validate(pt(TailSelector::first(), {to_integer(3)})), InputError);
  CHECK_THROWS_AS(pow2().validate(pt(TailSelector::kth(3))), InputError);
  CHECK_NOTHROW(pow2().validate(pt(TailSelector::kth(2))));
}

TEST_CASE("counterexample profile") {
  auto p = counterexample_profile(8);
  CHECK(p.running == Rational(Integer("10180699028325"), Integer("17592186044416")));
  CHECK(p.exceeds_half);
  CHECK(p.all_proper);
  CHECK(p.mu.verdict == Verdict::kIndependent);
  CHECK(p.nm.verdict == Verdict::kDependent);
  CHECK(counterexample_profile(5).running == Rational(615195, 1048576));
  auto empty = counterexample_profile(0);
  CHECK(empty.rows.empty());
  CHECK(empty.running == 1);
  for (const auto& row : p.rows) {
    CAPTURE(row.level);
    CHECK(row.ratio == row.x);
    if (row.product_size) CHECK(Integer(static_cast<unsigned long>(*row.product_size)) >= *row.size_bound);
  }
}

TEST_CASE("counterexample with explicit sizes") {
  auto p = counterexample_profile(2, std::vector<Integer>{to_integer(2), to_integer(4)});
  CHECK(p.overridden);
  CHECK(p.running == Rational(3, 8));
  CHECK_FALSE(p.exceeds_half);
}

TEST_CASE("residue-collision chain is dependent at every step") {
  ProductPointSet c{pt(TailSelector::first())};
  auto chain = mu_rank_infinite_witness(pow2(), c, 5);
  CHECK(chain.all_dependent);
  REQUIRE(chain.sets.size() == 6);
  for (std::size_t j = 0; j + 1 < chain.sets.size(); ++j)
    CHECK(mu_independent(pow2(), c, chain.sets[j], chain.sets[j + 1]).verdict == Verdict::kDependent);
}

TEST_CASE("property: extension witness fixes A and re-verifies") {
  gen::Gen g(21);
  for (int t = 0; t < 60; ++t) {
    CAPTURE(t);
    auto a = g.product_set(pow2(), 0, 3), b = g.product_set(pow2(), 0, 3), c = g.product_set(pow2(), 1, 3);
    auto w = extension_witness(pow2(), c, a, b);
    CHECK(w.sigma.fixes(pow2(), a));
    CHECK(w.verdict.verdict == Verdict::kIndependent);
    CHECK(mu_independent(pow2(), w.moved, a, b).verdict == Verdict::kIndependent);
    // sigma C realizes the type of C over A.
    CHECK(mu_independent(pow2(), w.moved, a, {}).verdict == mu_independent(pow2(), c, a, {}).verdict);
  }
}

TEST_CASE("property: symmetry of mu and nm") {
  gen::Gen g(22);
  int decided_count = 0;
  for (int t = 0; t < 150; ++t) {
    auto a = g.product_set(pow2(), 1, 2), base = g.product_set(pow2(), 0, 2), b = g.product_set(pow2(), 1, 2);
    for (auto k : {IndependenceKind::kMu, IndependenceKind::kNm}) {
      auto ab = independent(k, pow2(), a, base, b), ba = independent(k, pow2(), b, base, a);
      if (!decided(ab) || !decided(ba)) continue;
      ++decided_count;
      CAPTURE(t);
      CHECK(ab.verdict == ba.verdict);
    }
  }
  CHECK(decided_count > 200);
}

TEST_CASE("property: nm implies mu, and base points are independent") {
  gen::Gen g(23);
  for (int t = 0; t < 150; ++t) {
    CAPTURE(t);
    auto a = g.product_set(pow2(), 1, 2), base = g.product_set(pow2(), 0, 2), b = g.product_set(pow2(), 1, 2);
    auto nm = nm_independent(pow2(), a, base, b);
    auto mu = mu_independent(pow2(), a, base, b);
    if (nm.verdict == Verdict::kIndependent && decided(mu)) CHECK(mu.verdict == Verdict::kIndependent);
    CHECK(mu_independent(pow2(), a, join(base, a), b).verdict == Verdict::kIndependent);
    CHECK(mu_independent(pow2(), a, base, {}).verdict == Verdict::kIndependent);
  }
}

TEST_CASE("property: invariance under finitely supported and tail elements") {
  gen::Gen g(24);
  for (int t = 0; t < 100; ++t) {
    CAPTURE(t);
    auto a = g.product_set(pow2(), 1, 2), base = g.product_set(pow2(), 0, 2), b = g.product_set(pow2(), 1, 2);
    std::vector<ProductElement::LevelMap> levels(3);
    for (std::size_t i = 0; i < 3; ++i) {
      std::size_t n = pow2().n(i).get_ui();
      auto x = to_integer(g.between(1, n)), y = to_integer(g.between(1, n));
      if (x != y) levels[i] = {{x, y}, {y, x}};
    }
    std::vector<ProductElement::TailMap> tail;
    if (g.coin()) tail = {{{SymVal::constant(1), SymVal::last()}, {SymVal::last(), SymVal::constant(1)}}};
    ProductElement sigma(levels, tail);
    sigma.validate(pow2());
    auto before = mu_independent(pow2(), a, base, b);
    auto after = mu_independent(pow2(), sigma.apply(pow2(), a), sigma.apply(pow2(), base), sigma.apply(pow2(), b));
    if (decided(before) && decided(after)) CHECK(before.verdict == after.verdict);
  }
}

TEST_CASE("property: nested transitivity") {
  gen::Gen g(25);
  int checked = 0;
  for (int t = 0; t < 150; ++t) {
    auto a = g.product_set(pow2(), 1, 2), base = g.product_set(pow2(), 0, 1);
    auto b = g.product_set(pow2(), 1, 2), d = g.product_set(pow2(), 1, 2);
    auto mid = join(base, b), top = join(mid, d);
    auto whole = mu_independent(pow2(), a, base, top);
    auto low = mu_independent(pow2(), a, base, mid);
    auto high = mu_independent(pow2(), a, mid, top);
    if (!decided(whole) || !decided(low) || !decided(high)) continue;
    ++checked;
    CAPTURE(t);
    CHECK((whole.verdict == Verdict::kIndependent) ==
          (low.verdict == Verdict::kIndependent && high.verdict == Verdict::kIndependent));
  }
  CHECK(checked > 100);
}

TEST_CASE("property: level rows are internally consistent") {
  gen::Gen g(26);
  for (int t = 0; t < 40; ++t) {
    auto a = g.product_set(pow2(), 1, 2), base = g.product_set(pow2(), 0, 2), b = g.product_set(pow2(), 1, 2);
    auto v = mu_independent(pow2(), a, base, b);
    Rational running = 1;
    for (const auto& row : v.rows) {
      CAPTURE(t);
      CAPTURE(row.level);
      running *= row.ratio;
      CHECK(row.running == running);
      CHECK(row.full_product == (row.ratio == 1));
      CHECK(row.counts.r_prime <= row.counts.r);
    }
  }
}
