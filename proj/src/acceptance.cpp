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

#include "muind/acceptance.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "muind/errors.hpp"
#include "muind/measure.hpp"
#include "muind/perm.hpp"
#include "muind/product.hpp"
#include "muind/rank.hpp"
#include "muind/tree.hpp"

namespace muind {

const std::vector<CriterionInfo>& acceptance_criteria() {
  static const std::vector<CriterionInfo> list = {
      {1, "product-set ratio law in S_3 .. S_8", 10},
      {2, "counterexample reproduction to 8 levels", 5},
      {3, "closed-form double coset ratio against enumeration, n <= 8", 60},
      {4, "extension axiom on 50 random instances", 30},
      {5, "symmetry, invariance, transitivity and nm => mu on 200 instances", 60},
      {6, "branch smallness on the binary tree", 10},
      {7, "branch rank 1 and trivial pregeometry at depth 6", 30},
      {8, "length-5 dependence chain in the product family", 10},
      {9, "Lascar inequalities on 20 boundary samples", 30},
  };
  return list;
}

namespace {

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

struct Outcome {
  bool passed = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (passed) detail.str(why);
    passed = false;
  }
};

// 1. |stab(n) stab(1)| / n! = (n-1)/n and |H1 H2| >= (n-1)!(n-1).
void ratio_law(Outcome& o, const AcceptanceOptions& opt) {
  for (unsigned n = 3; n <= 8; ++n) {
    auto sn = FiniteAction::symmetric(n);
    Subgroup h1 = pointwise_stabilizer(sn, Tuple{static_cast<Point>(n - 1)});
    Subgroup h2 = pointwise_stabilizer(sn, Tuple{0});
    ElementSet prod = product_set(h1, h2);
    Rational m = NormalizedMeasure(Subgroup::whole(sn))(prod);
    Rational expect = make_rational(n - 1, n) + opt.ratio_offset;
    if (m != expect) o.fail("n = " + std::to_string(n) + ": measure " + to_string(m) + " != " + to_string(expect));
    if (Integer(static_cast<unsigned long>(prod.size())) < factorial(n - 1) * (n - 1))
      o.fail("n = " + std::to_string(n) + ": |H1H2| below (n-1)!(n-1)");
  }
  if (o.passed) o.detail << "measure (n-1)/n exact for n = 3..8";
}

// 2. The default profile.
void counterexample(Outcome& o, const AcceptanceOptions& opt) {
  auto p = counterexample_profile(8);
  Rational half = Rational(1, 2) + opt.half_offset;
  if (!(p.running > half)) o.fail("running product " + to_string(p.running) + " does not exceed " + to_string(half));
  if (!p.all_proper) o.fail("some level has H1H2 = G(i)");
  if (p.mu.verdict != Verdict::kIndependent) o.fail("mu verdict is " + to_string(p.mu.verdict));
  if (p.nm.verdict != Verdict::kDependent) o.fail("nm verdict is " + to_string(p.nm.verdict));
  if (o.passed)
    o.detail << "running product " << p.running.get_d() << " > 1/2, all levels proper, mu independent, nm dependent";
}

// 3. Closed form against enumerated |G_AB G_AC| / |G_A|.
void double_coset(Outcome& o, const AcceptanceOptions& opt) {
  std::size_t checked = 0;
  for (unsigned n = 1; n <= 8; ++n) {
    auto sn = FiniteAction::symmetric(n);
    for (unsigned p = 0; p < n; ++p)
      for (unsigned q = 0; p + q < n; ++q)
        for (unsigned r = 0; p + q + r < n; ++r)
          for (unsigned rp = 0; rp <= r; ++rp) {
            if (r - rp > q) continue;  // C meets B \ A in at most q points
            Tuple a, b, c;
            for (unsigned i = 0; i < p; ++i) a.push_back(i);
            b = a;
            for (unsigned i = 0; i < q; ++i) b.push_back(p + i);
            c = a;
            for (unsigned i = 0; i < r - rp; ++i) c.push_back(p + i);
            for (unsigned i = 0; i < rp; ++i) c.push_back(p + q + i);
            Subgroup ga = pointwise_stabilizer(sn, a);
            Subgroup gab = pointwise_stabilizer(sn, b);
            Subgroup gac = pointwise_stabilizer(sn, c);
            Rational m = NormalizedMeasure(ga)(product_set(gab, gac));
            Rational closed = double_coset_ratio(n, p, q, r, rp) + opt.ratio_offset;
            ++checked;
            if (m != closed)
              o.fail("n=" + std::to_string(n) + " p=" + std::to_string(p) + " q=" + std::to_string(q) + " r=" +
                     std::to_string(r) + " r'=" + std::to_string(rp) + ": " + to_string(m) + " vs " + to_string(closed));
          }
  }
  if (o.passed) o.detail << checked << " configurations agree exactly";
}

ProductPoint random_point(Rng& rng, const ProductStructure& s) {
  static const std::vector<TailSelector> tails = {
      TailSelector::first(), TailSelector::last(), TailSelector::kth(2), TailSelector::kth(3),
      TailSelector::cycle({SymVal::constant(1), SymVal::last()}),
      TailSelector::cycle({SymVal::last(), SymVal::constant(2), SymVal::constant(1)})};
  while (true) {
    ProductPoint p;
    std::size_t len = uniform(rng, 0, 3);
    for (std::size_t i = 0; i < len; ++i) {
      std::uint64_t n = s.n(i).get_ui();
      p.coords.push_back(to_integer(uniform(rng, 1, std::min<std::uint64_t>(n, 4))));
    }
    p.tail = tails[uniform(rng, 0, tails.size() - 1)];
    try {
      s.validate(p);
      return p;
    } catch (const InputError&) {
    }
  }
}

ProductPointSet random_set(Rng& rng, const ProductStructure& s, std::size_t lo, std::size_t hi) {
  ProductPointSet out;
  std::size_t k = uniform(rng, lo, hi);
  for (std::size_t i = 0; i < k; ++i) out.push_back(random_point(rng, s));
  return out;
}

// 4. sigma fixes A and the moved C re-verifies independent of B over A.
void extension(Outcome& o, const AcceptanceOptions& opt) {
  ProductStructure s(LevelSizes::geometric(2, 1));
  Rng rng(opt.seed);
  for (int t = 0; t < 50; ++t) {
    auto a = random_set(rng, s, 0, 3), b = random_set(rng, s, 0, 3), c = random_set(rng, s, 1, 3);
    auto w = extension_witness(s, c, a, b);
    if (!w.sigma.fixes(s, a)) o.fail("instance " + std::to_string(t) + ": sigma moves A");
    auto again = mu_independent(s, w.sigma.apply(s, c), a, b);
    if (w.verdict.verdict != Verdict::kIndependent || again.verdict != Verdict::kIndependent)
      o.fail("instance " + std::to_string(t) + ": moved C is " + to_string(again.verdict));
  }
  if (o.passed) o.detail << "50 instances re-verify mu-independent";
}

ProductElement random_element(Rng& rng, const ProductStructure& s) {
  std::vector<ProductElement::LevelMap> levels(2);
  for (std::size_t i = 0; i < 2; ++i) {
    std::uint64_t n = s.n(i).get_ui();
    std::uint64_t x = uniform(rng, 1, n), y = uniform(rng, 1, n);
    if (x != y) levels[i] = {{to_integer(x), to_integer(y)}, {to_integer(y), to_integer(x)}};
  }
  std::vector<ProductElement::TailMap> tail;
  switch (uniform(rng, 0, 2)) {
    case 0: break;
    case 1: tail = {{{SymVal::constant(1), SymVal::last()}, {SymVal::last(), SymVal::constant(1)}}}; break;
    default:
      tail = {{{SymVal::constant(2), SymVal::constant(3)}, {SymVal::constant(3), SymVal::constant(2)}}, {}};
  }
  ProductElement g(levels, tail);
  g.validate(s);
  return g;
}

ProductPointSet join(ProductPointSet x, const ProductPointSet& y) {
  x.insert(x.end(), y.begin(), y.end());
  return x;
}

// 5. The basic axioms on decidable instances.
void axioms(Outcome& o, const AcceptanceOptions& opt) {
  ProductStructure s(LevelSizes::geometric(2, 1));
  Rng rng(opt.seed + 5);
  std::size_t decided = 0, attempts = 0;
  while (decided < 200 && attempts < 2000) {
    ++attempts;
    auto a = random_set(rng, s, 1, 2), base = random_set(rng, s, 0, 2), b = random_set(rng, s, 1, 2);
    auto extra = random_set(rng, s, 1, 2);
    auto ab = mu_independent(s, a, base, b);
    auto ba = mu_independent(s, b, base, a);
    auto nm = nm_independent(s, a, base, b);
    if (ab.verdict == Verdict::kUnknown || ba.verdict == Verdict::kUnknown || nm.verdict == Verdict::kUnknown) continue;
    ++decided;
    std::string tag = "instance " + std::to_string(decided) + ": ";
    if (ab.verdict != ba.verdict) o.fail(tag + "symmetry fails");
    auto g = random_element(rng, s);
    auto moved = mu_independent(s, g.apply(s, a), g.apply(s, base), g.apply(s, b));
    if (moved.verdict != ab.verdict) o.fail(tag + "invariance fails under " + g.to_string());
    // A <= A u B <= A u B u E.
    ProductPointSet mid = join(base, b), top = join(join(base, b), extra);
    auto whole = mu_independent(s, a, base, top);
    auto lower = mu_independent(s, a, base, mid);
    auto upper = mu_independent(s, a, mid, top);
    if (whole.verdict != Verdict::kUnknown && lower.verdict != Verdict::kUnknown && upper.verdict != Verdict::kUnknown) {
      bool lhs = whole.verdict == Verdict::kIndependent;
      bool rhs = lower.verdict == Verdict::kIndependent && upper.verdict == Verdict::kIndependent;
      if (lhs != rhs) o.fail(tag + "transitivity fails");
    }
    if (nm.verdict == Verdict::kIndependent && ab.verdict != Verdict::kIndependent) o.fail(tag + "nm does not imply mu");
  }
  if (decided < 200) o.fail("only " + std::to_string(decided) + " decidable instances in " + std::to_string(attempts) + " draws");
  if (o.passed) o.detail << decided << " decidable instances, zero failures";
}

// 6. One ray on the binary tree.
void smallness(Outcome& o, const AcceptanceOptions& opt) {
  BoundaryPoint ray{{}, BoundaryPoint::Tail::kLeft, {}};
  for (auto [depth, expect] : {std::pair<std::size_t, std::size_t>{4, 5}, {5, 6}}) {
    auto g = TruncatedTreeGroup::full_automorphisms(Arity::constant(2), depth);
    auto p = smallness_profile(g, {ray}, depth);
    std::size_t want = expect + opt.smallness_offset;
    if (p.orbits.size() != want)
      o.fail("depth " + std::to_string(depth) + ": " + std::to_string(p.orbits.size()) + " orbits, expected " +
             std::to_string(want));
    if (!p.matches_prediction) o.fail("depth " + std::to_string(depth) + ": orbits differ from the omega prediction");
  }
  if (o.passed) o.detail << "5 leaf orbits at depth 4 and 6 at depth 5, both matching omega";
}

std::vector<BoundaryPoint> sample_rays(Rng& rng, std::size_t count, std::size_t depth) {
  std::vector<BoundaryPoint> out;
  while (out.size() < count) {
    BoundaryPoint p;
    std::size_t len = uniform(rng, 1, depth);
    for (std::size_t i = 0; i < len; ++i) p.path.push_back(static_cast<unsigned>(uniform(rng, 0, 1)));
    switch (uniform(rng, 0, 2)) {
      case 0: p.tail = BoundaryPoint::Tail::kLeft; break;
      case 1: p.tail = BoundaryPoint::Tail::kRight; break;
      default: p.tail = BoundaryPoint::Tail::kCycle; p.cycle = {0, 1};
    }
    Arity two = Arity::constant(2);
    bool fresh = std::none_of(out.begin(), out.end(), [&](const BoundaryPoint& q) { return same_ray(two, p, q); });
    if (fresh) out.push_back(p);
  }
  return out;
}

// 7. Independence iff outside F, rank 1, trivial pregeometry.
void branch_rank(Outcome& o, const AcceptanceOptions& opt) {
  auto g = std::make_shared<const TruncatedTreeGroup>(TruncatedTreeGroup::full_automorphisms(Arity::constant(2), 6));
  Rng rng(opt.seed + 7);
  auto rays = sample_rays(rng, 10, 6);
  auto oracle = std::make_shared<BranchOracle>(g);
  PointSet pool;
  for (const auto& r : rays) pool.push_back(oracle->add(r));
  CachedOracle cached(oracle);
  std::size_t queries = 0;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (int t = 0; t < 4; ++t) {
      std::vector<BoundaryPoint> f;
      bool inside = false;
      for (std::size_t j = 0; j < rays.size(); ++j)
        if (uniform(rng, 0, 3) == 0) {
          f.push_back(rays[j]);
          inside = inside || j == i;
        }
      if (t == 0) {
        f.push_back(rays[i]);
        inside = true;
      }
      auto c = boundary_mu_checks(*g, rays[i], f);
      ++queries;
      bool indep = c.verdict.mu == Verdict::kIndependent;
      if (indep == inside) o.fail("ray " + rays[i].to_string() + ": independence does not track membership in F");
      if (c.verdict.mu != c.verdict.nm) o.fail("ray " + rays[i].to_string() + ": mu and nm verdicts differ");
    }
    auto r = mu_rank(cached, {pool[i]}, {}, CandidatePool::single(pool), 3);
    if (!r.exact() || r.value != 1) o.fail("ray " + rays[i].to_string() + " has rank " + r.to_string());
  }
  auto pg = pregeometry_check(cached, pool, {});
  if (!pg.passed()) o.fail("pregeometry axioms fail: " + pg.exchange.witness + pg.monotone.witness + pg.closure.witness);
  if (!pg.trivial) o.fail("closure is not trivial");
  if (o.passed)
    o.detail << queries << " membership queries, 10 rays of rank 1, trivial pregeometry over " << pg.subsets_checked
             << " subsets";
}

// 8. Residue-collision chain.
void infinite_rank(Outcome& o, const AcceptanceOptions&) {
  ProductStructure s(LevelSizes::geometric(2, 1));
  ProductPointSet c{ProductPoint{{}, TailSelector::first()}};
  auto chain = mu_rank_infinite_witness(s, c, 5);
  if (chain.sets.size() != 6) o.fail("chain has " + std::to_string(chain.sets.size()) + " sets");
  for (std::size_t j = 0; j + 1 < chain.sets.size(); ++j) {
    auto v = mu_independent(s, c, chain.sets[j], chain.sets[j + 1]);
    if (v.verdict != Verdict::kDependent) o.fail("step " + std::to_string(j) + " re-verifies " + to_string(v.verdict));
  }
  auto oracle = std::make_shared<ProductOracle>(s);
  PointId cid = oracle->add(c[0]);
  PointSet pool;
  for (const auto& p : chain.parameters) pool.push_back(oracle->add(p));
  auto r = mu_rank(*oracle, {cid}, {}, CandidatePool::single(pool), 5);
  if (r.kind != RankResult::Kind::kAtLeast || r.value != 5) o.fail("rank search gives " + r.to_string());
  if (o.passed) o.detail << "5 dependent steps re-verified; rank search reports at-least(5)";
}

// 9. Lascar inequalities with exact pool ranks.
void lascar(Outcome& o, const AcceptanceOptions& opt) {
  auto g = std::make_shared<const TruncatedTreeGroup>(TruncatedTreeGroup::full_automorphisms(Arity::constant(2), 6));
  Rng rng(opt.seed + 9);
  auto rays = sample_rays(rng, 8, 6);
  auto oracle = std::make_shared<BranchOracle>(g);
  PointSet pool;
  for (const auto& r : rays) pool.push_back(oracle->add(r));
  CachedOracle cached(oracle);
  std::vector<LascarSample> samples;
  for (int t = 0; t < 20; ++t) {
    PointId a = pool[uniform(rng, 0, pool.size() - 1)];
    PointId b = t % 5 == 0 ? a : pool[uniform(rng, 0, pool.size() - 1)];
    PointSet base;
    if (uniform(rng, 0, 1)) base.push_back(pool[uniform(rng, 0, pool.size() - 1)]);
    samples.push_back({{a}, {b}, base});
  }
  auto rank = [&](const PointSet& a, const PointSet& base) {
    return mu_rank(cached, a, base, CandidatePool::single(pool), 4);
  };
  auto report = lascar_check(cached, rank, samples);
  if (report.checked < 20) o.fail(std::to_string(report.skipped) + " samples lacked exact ranks");
  if (!report.passed())
    for (const auto& out : report.outcomes)
      if (!out.skipped && !out.note.empty()) o.fail(std::to_string(report.failures) + " failures; first: " + out.note);
  if (o.passed) o.detail << report.checked << " samples satisfy both inequalities and the independence equalities";
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  const auto& list = acceptance_criteria();
  if (id < 1 || id > static_cast<int>(list.size())) throw InputError("no acceptance criterion " + std::to_string(id));
  CriterionResult res;
  res.info = list[id - 1];
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: ratio_law(o, options); break;
      case 2: counterexample(o, options); break;
      case 3: double_coset(o, options); break;
      case 4: extension(o, options); break;
      case 5: axioms(o, options); break;
      case 6: smallness(o, options); break;
      case 7: branch_rank(o, options); break;
      case 8: infinite_rank(o, options); break;
      case 9: lascar(o, options); break;
    }
  } catch (const std::exception& e) {
    o.fail(std::string("error: ") + e.what());
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  res.passed = o.passed;
  res.within_budget = res.seconds <= res.info.budget_seconds;
  res.detail = o.detail.str();
  if (!res.within_budget) res.detail += " (over the time budget)";
  return res;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& only, const AcceptanceOptions& options) {
  for (int id : only)
    if (id < 1 || id > static_cast<int>(acceptance_criteria().size()))
      throw InputError("no acceptance criterion " + std::to_string(id));
  std::vector<CriterionResult> out;
  for (const auto& c : acceptance_criteria())
    if (only.empty() || std::find(only.begin(), only.end(), c.id) != only.end()) out.push_back(run_criterion(c.id, options));
  return out;
}

}  // namespace muind
