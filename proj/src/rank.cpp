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

#include "muind/rank.hpp"

#include <algorithm>
#include <iterator>
#include <set>

#include "muind/errors.hpp"
#include "muind/measure.hpp"

namespace muind {

PointSet make_set(std::vector<PointId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

PointSet set_union(const PointSet& x, const PointSet& y) {
  PointSet out;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const PointSet& x, const PointSet& y) {
  return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

Verdict IndependenceOracle::nm(const PointSet&, const PointSet&, const PointSet&) const {
  return Verdict::kUnknown;
}

std::string IndependenceOracle::label(const PointSet& s) const {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + label(s[i]);
  return out + "}";
}

namespace {

void check_ids(const IndependenceOracle& o, const PointSet& s) {
  for (PointId p : s)
    if (p >= o.size()) throw InputError("point id " + std::to_string(p) + " is not registered");
}

}  // namespace

PointId ProductOracle::add(ProductPoint p) {
  s_.validate(p);
  for (PointId i = 0; i < points_.size(); ++i)
    if (points_[i] == p) return i;
  points_.push_back(std::move(p));
  return points_.size() - 1;
}

ProductPointSet ProductOracle::resolve(const PointSet& ids) const {
  check_ids(*this, ids);
  ProductPointSet out;
  for (PointId p : ids) out.push_back(points_[p]);
  return out;
}

Verdict ProductOracle::mu(const PointSet& a, const PointSet& base, const PointSet& other) const {
  return mu_independent(s_, resolve(a), resolve(base), resolve(other)).verdict;
}

Verdict ProductOracle::nm(const PointSet& a, const PointSet& base, const PointSet& other) const {
  return nm_independent(s_, resolve(a), resolve(base), resolve(other)).verdict;
}

PointId BranchOracle::add(BoundaryPoint p) {
  p.validate(g_->tree().arity());
  for (PointId i = 0; i < points_.size(); ++i)
    if (points_[i] == p) return i;
  points_.push_back(std::move(p));
  return points_.size() - 1;
}

std::vector<BoundaryPoint> BranchOracle::resolve(const PointSet& ids) const {
  check_ids(*this, ids);
  std::vector<BoundaryPoint> out;
  for (PointId p : ids) out.push_back(points_[p]);
  return out;
}

BranchVerdict BranchOracle::query(const PointSet& a, const PointSet& base, const PointSet& other) const {
  return branch_independence(*g_, resolve(a), resolve(base), resolve(other));
}

Verdict BranchOracle::mu(const PointSet& a, const PointSet& base, const PointSet& other) const {
  return query(a, base, other).mu;
}

Verdict BranchOracle::nm(const PointSet& a, const PointSet& base, const PointSet& other) const {
  return query(a, base, other).nm;
}

FiniteIndependence finite_independence(const std::shared_ptr<const FiniteAction>& action,
                                       const Tuple& a, const Tuple& base, const Tuple& other) {
  Tuple ab = base, aa = base;
  ab.insert(ab.end(), other.begin(), other.end());
  aa.insert(aa.end(), a.begin(), a.end());
  Subgroup ga = pointwise_stabilizer(action, base);
  Subgroup gab = pointwise_stabilizer(action, ab);
  Subgroup gaa = pointwise_stabilizer(action, aa);
  ElementSet prod = product_set(gab, gaa);
  FiniteIndependence out;
  out.measure = NormalizedMeasure(ga)(prod);
  out.product_size = prod.size();
  out.base_order = ga.order();
  out.orbit_over_a = orbit(ga, a).size();
  out.orbit_over_ab = orbit(gab, a).size();
  return out;
}

namespace {

Tuple to_tuple(const PointSet& s) { return Tuple(s.begin(), s.end()); }

}  // namespace

Verdict FiniteOracle::mu(const PointSet& a, const PointSet& base, const PointSet& other) const {
  check_ids(*this, a);
  check_ids(*this, base);
  check_ids(*this, other);
  auto r = finite_independence(action_, to_tuple(a), to_tuple(base), to_tuple(other));
  return r.measure > 0 ? Verdict::kIndependent : Verdict::kDependent;
}

Verdict FiniteOracle::nm(const PointSet& a, const PointSet& base, const PointSet& other) const {
  // Every non-empty subset of a discrete group is open.
  return mu(a, base, other);
}

std::shared_ptr<ClosureOracle> ClosureOracle::exchange_counterexample() {
  return std::make_shared<ClosureOracle>(
      3,
      [](const PointSet& s) {
        PointSet out = s;
        if (std::binary_search(s.begin(), s.end(), PointId{0})) out = set_union(out, {2});
        return out;
      },
      "three points, cl(S) = S plus 2 when 0 is in S");
}

Verdict ClosureOracle::mu(const PointSet& a, const PointSet& base, const PointSet& other) const {
  check_ids(*this, a);
  check_ids(*this, base);
  check_ids(*this, other);
  PointSet lo = closure_(base), hi = closure_(set_union(base, other));
  for (PointId x : a)
    if (std::binary_search(hi.begin(), hi.end(), x) && !std::binary_search(lo.begin(), lo.end(), x))
      return Verdict::kDependent;
  return Verdict::kIndependent;
}

Verdict CachedOracle::lookup(bool nm, const PointSet& a, const PointSet& base, const PointSet& other) const {
  Key key{nm, a, base, other};
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++queries_;
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      ++hits_;
      return it->second;
    }
  }
  Verdict v = nm ? inner_->nm(a, base, other) : inner_->mu(a, base, other);
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(std::move(key), v);
  return v;
}

Verdict CachedOracle::mu(const PointSet& a, const PointSet& base, const PointSet& other) const {
  return lookup(false, a, base, other);
}

Verdict CachedOracle::nm(const PointSet& a, const PointSet& base, const PointSet& other) const {
  return lookup(true, a, base, other);
}

std::size_t CachedOracle::queries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return queries_;
}

std::size_t CachedOracle::hits() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hits_;
}

CandidatePool CandidatePool::single(PointSet points) {
  return CandidatePool{make_set(std::move(points)), Mode::kSinglePoint, 1};
}

CandidatePool CandidatePool::subsets(PointSet points, std::size_t max_subset) {
  if (max_subset == 0) throw InputError("subset pools need a size limit of at least 1");
  return CandidatePool{make_set(std::move(points)), Mode::kSubsets, max_subset};
}

std::vector<PointSet> CandidatePool::extensions(const PointSet& base) const {
  PointSet fresh;
  std::set_difference(points.begin(), points.end(), base.begin(), base.end(), std::back_inserter(fresh));
  std::vector<PointSet> out;
  std::size_t limit = std::min<std::size_t>(mode == Mode::kSinglePoint ? 1 : max_subset, fresh.size());
  // Subsets of `fresh` by increasing size, lexicographic within a size.
  for (std::size_t k = 1; k <= limit; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      PointSet add;
      for (std::size_t i : idx) add.push_back(fresh[i]);
      out.push_back(set_union(base, add));
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == fresh.size() - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

std::string CandidatePool::describe() const {
  std::string out = std::to_string(points.size()) + " points, ";
  return out + (mode == Mode::kSinglePoint ? "one point per step"
                                           : "subsets of size <= " + std::to_string(max_subset) + " per step");
}

std::string to_string(RankResult::Kind k) {
  switch (k) {
    case RankResult::Kind::kExact: return "exact";
    case RankResult::Kind::kAtLeast: return "at-least";
    case RankResult::Kind::kInfiniteWitnessed: return "infinite-witnessed";
    case RankResult::Kind::kUnknown: return "unknown";
  }
  return "unknown";
}

std::string RankResult::to_string() const {
  switch (kind) {
    case Kind::kExact: return std::to_string(value);
    case Kind::kAtLeast: return "at-least(" + std::to_string(value) + ")";
    case Kind::kInfiniteWitnessed: return "infinite-witnessed(" + std::to_string(value) + ")";
    case Kind::kUnknown: return "unknown";
  }
  return "unknown";
}

namespace {

struct RankSearch {
  const IndependenceOracle& oracle;
  const PointSet& a;
  const CandidatePool& pool;
  std::map<std::pair<PointSet, std::size_t>, std::vector<PointSet>> memo;
  bool unknown = false;
  std::size_t queries = 0;

  // Longest chain starting at `base` with at most `budget` steps; chain[0] == base.
  std::vector<PointSet> longest(const PointSet& base, std::size_t budget) {
    if (budget == 0) return {base};
    auto key = std::make_pair(base, budget);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<PointSet> best{base};
    for (const PointSet& b : pool.extensions(base)) {
      ++queries;
      Verdict v = oracle.mu(a, base, b);
      if (v == Verdict::kUnknown) {
        unknown = true;
        continue;
      }
      if (v != Verdict::kDependent) continue;
      auto sub = longest(b, budget - 1);
      if (sub.size() + 1 > best.size()) {
        best = {base};
        best.insert(best.end(), sub.begin(), sub.end());
        if (best.size() == budget + 1) break;
      }
    }
    memo.emplace(std::move(key), best);
    return best;
  }
};

}  // namespace

RankResult mu_rank(const IndependenceOracle& oracle, const PointSet& a, const PointSet& base,
                   CandidatePool pool, std::size_t bound) {
  if (a.empty()) throw InputError("rank query needs at least one point");
  check_ids(oracle, a);
  check_ids(oracle, base);
  check_ids(oracle, pool.points);
  pool.points = set_union(make_set(pool.points), a);
  RankResult out;
  out.bound = bound;
  out.pool = pool;
  RankSearch search{oracle, a, out.pool, {}, false, 0};
  out.chain = search.longest(base, bound);
  out.queries = search.queries;
  out.value = out.chain.size() - 1;
  if (out.value == bound) {
    out.kind = RankResult::Kind::kAtLeast;
    out.detail = "a dependence chain of length " + std::to_string(bound) + " reaches the search bound";
  } else if (search.unknown) {
    out.kind = RankResult::Kind::kUnknown;
    out.detail = "an undecided verdict leaves the search incomplete; partial chain of length " +
                 std::to_string(out.value);
  } else {
    out.kind = RankResult::Kind::kExact;
    out.detail = "no dependence chain of length " + std::to_string(out.value + 1) + " over the pool";
  }
  return out;
}

RankResult product_infinite_rank(ProductOracle& registry, const ProductPointSet& c, unsigned k) {
  const ProductStructure& s = registry.structure();
  if (k == 0) throw InputError("witness length must be at least 1");
  RankResult out;
  out.bound = k;
  for (unsigned j = 1; j <= k; ++j) {
    DependenceChain chain = mu_rank_infinite_witness(s, c, j);
    if (!chain.all_dependent) {
      out.kind = RankResult::Kind::kUnknown;
      out.detail = "residue-collision chain of length " + std::to_string(j) + " is not dependent at every step";
      return out;
    }
    if (j == k) {
      for (const auto& p : chain.parameters) out.pool.points.push_back(registry.add(p));
      for (const auto& step : chain.steps) out.step_details.push_back(to_string(step.verdict) + ": " + step.detail);
      for (const auto& set : chain.sets) {
        PointSet ids;
        for (const auto& p : set) ids.push_back(registry.add(p));
        out.chain.push_back(make_set(ids));
      }
    }
  }
  out.kind = RankResult::Kind::kInfiniteWitnessed;
  out.value = k;
  out.detail = "residue-collision chains of every length up to " + std::to_string(k) +
               " are dependent at each step";
  return out;
}

LascarReport lascar_check(const IndependenceOracle& oracle, const RankFunction& rank,
                          const std::vector<LascarSample>& samples) {
  LascarReport report;
  for (const auto& sample : samples) {
    LascarOutcome o;
    o.sample = sample;
    PointSet ab = set_union(sample.a, sample.b);
    RankResult r1 = rank(sample.a, set_union(sample.base, sample.b));
    RankResult r2 = rank(sample.b, sample.base);
    RankResult r3 = rank(ab, sample.base);
    RankResult r4 = rank(sample.a, sample.base);
    if (!r1.exact() || !r2.exact() || !r3.exact() || !r4.exact()) {
      o.skipped = true;
      o.note = "a rank is not exact over the pool; sample skipped";
      ++report.skipped;
      report.outcomes.push_back(std::move(o));
      continue;
    }
    o.r_a_over_ab = r1.value;
    o.r_b_over_a = r2.value;
    o.r_ab_over_a = r3.value;
    o.r_a_over_a = r4.value;
    o.lower_ok = o.r_a_over_ab + o.r_b_over_a <= o.r_ab_over_a;
    o.upper_ok = o.r_ab_over_a <= o.r_a_over_ab + o.r_b_over_a;
    Verdict v = oracle.mu(sample.a, sample.base, set_union(sample.base, sample.b));
    o.independent = v == Verdict::kIndependent;
    if (o.independent) {
      o.equality_ok = o.r_a_over_ab == o.r_a_over_a;
      o.sum_ok = o.r_ab_over_a == o.r_a_over_a + o.r_b_over_a;
    }
    ++report.checked;
    if (!(o.lower_ok && o.upper_ok && o.equality_ok && o.sum_ok)) {
      ++report.failures;
      o.note = "failure on a = " + oracle.label(sample.a) + ", b = " + oracle.label(sample.b) +
               ", A = " + oracle.label(sample.base);
    }
    report.outcomes.push_back(std::move(o));
  }
  return report;
}

namespace {

std::vector<PointSet> subsets_up_to(const PointSet& pool, std::size_t k) {
  CandidatePool p = CandidatePool::subsets(pool, std::max<std::size_t>(k, 1));
  std::vector<PointSet> out{PointSet{}};
  if (k == 0) return out;
  auto ext = p.extensions({});
  out.insert(out.end(), ext.begin(), ext.end());
  return out;
}

}  // namespace

PregeometryReport pregeometry_check(const IndependenceOracle& oracle, const PointSet& pool_in,
                                    const PointSet& base, std::size_t max_subset) {
  PointSet pool = make_set(pool_in);
  check_ids(oracle, pool);
  check_ids(oracle, base);
  PregeometryReport report;
  report.pool = pool;
  report.base = base;
  PointSet rank_zero;
  for (PointId p : pool) {
    RankResult r = mu_rank(oracle, {p}, base, CandidatePool::single(pool), 2);
    if (r.kind == RankResult::Kind::kUnknown)
      throw UndecidableError("rank of " + oracle.label(p) + " over the base is undecided");
    if (r.value >= 2) throw InputError("pool point " + oracle.label(p) + " has rank at least 2 over the base");
    if (r.value == 0) rank_zero.push_back(p);
  }
  std::map<PointSet, PointSet> memo;
  auto cl = [&](const PointSet& s) -> const PointSet& {
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    PointSet out = set_union(s, rank_zero);
    PointSet other = set_union(base, s);
    for (PointId p : pool) {
      if (std::binary_search(out.begin(), out.end(), p)) continue;
      Verdict v = oracle.mu({p}, base, other);
      if (v == Verdict::kUnknown)
        throw UndecidableError("dependence of " + oracle.label(p) + " on " + oracle.label(s) + " is undecided");
      if (v == Verdict::kDependent) out = set_union(out, {p});
    }
    return memo.emplace(s, std::move(out)).first->second;
  };
  auto fail = [&](AxiomCheck& check, const std::string& why) {
    if (check.passed) check.witness = why;
    check.passed = false;
  };

  PointSet empty_closure = cl({});
  for (const PointSet& s : subsets_up_to(pool, max_subset)) {
    ++report.subsets_checked;
    const PointSet c = cl(s);
    report.closures[s] = c;
    if (!is_subset(s, c)) fail(report.extensive, oracle.label(s) + " is not inside its closure");
    if (cl(c) != c) fail(report.closure, "closure of " + oracle.label(s) + " is not closed");
    if (c != set_union(s, empty_closure)) report.trivial = false;
    if (s.size() >= max_subset) continue;
    for (PointId x : pool) {
      if (std::binary_search(s.begin(), s.end(), x)) continue;
      PointSet sx = set_union(s, {x});
      const PointSet cx = cl(sx);
      if (!is_subset(c, cx)) fail(report.monotone, "cl(" + oracle.label(s) + ") not inside cl(" + oracle.label(sx) + ")");
      for (PointId y : cx) {
        if (std::binary_search(c.begin(), c.end(), y)) continue;
        const PointSet cy = cl(set_union(s, {y}));
        if (!std::binary_search(cy.begin(), cy.end(), x))
          fail(report.exchange, oracle.label(y) + " in cl(" + oracle.label(sx) + ") \\ cl(" + oracle.label(s) +
                                    ") but " + oracle.label(x) + " not in cl(" + oracle.label(set_union(s, {y})) + ")");
      }
    }
  }
  // Every subset of a finite pool is finite; the axiom holds with S_0 = S.
  report.finite_character.passed = true;
  return report;
}

GenericOrbitReport generic_orbit_check(const std::shared_ptr<const FiniteAction>& group,
                                       const Perm& a, const std::vector<Perm>& base) {
  const auto& elems = group->elements();
  if (elems.size() > 1000) throw CapacityError("generic orbit check needs a group of order <= 1000");
  auto index_of = [&](const Perm& g) -> Point {
    auto it = std::lower_bound(elems.begin(), elems.end(), g);
    if (it == elems.end() || *it != g) throw InputError("element does not belong to the group");
    return static_cast<Point>(it - elems.begin());
  };
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < elems.size(); ++i) labels.push_back(std::to_string(i));
  std::vector<Perm> translations;
  for (const Perm& g : group->generators()) {
    std::vector<Point> images(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) images[i] = index_of(g * elems[i]);
    translations.emplace_back(std::move(images));
  }
  if (translations.empty()) translations.push_back(Perm::identity(elems.size()));
  auto action = std::make_shared<const FiniteAction>(std::move(labels), std::move(translations), 1000);
  if (action->order() != elems.size()) throw InternalError("left translation action is not faithful");

  Tuple ta{index_of(a)}, tbase;
  for (const Perm& b : base) tbase.push_back(index_of(b));
  GenericOrbitReport out;
  Subgroup ga = pointwise_stabilizer(action, tbase);
  out.measure = make_rational(orbit(ga, ta).size(), elems.size());
  out.positive = out.measure > 0;
  out.translation_generic = true;
  for (const Perm& b : elems) {
    Tuple tb{index_of(b)};
    if (finite_independence(action, ta, tbase, tb).measure == 0) continue;
    ++out.translations_checked;
    Tuple tba{index_of(b * a)};
    if (finite_independence(action, tba, tbase, tb).measure == 0) out.translation_generic = false;
  }
  out.agree = out.positive == out.translation_generic;
  return out;
}

ProductVerdict product_orbit_measure(const LevelSizes& sizes, bool singleton) {
  RatioSequence seq;
  seq.tail = RatioTail{0, {singleton ? LevelFamily{InverseFactorialFamily{}} : LevelFamily{ConstantFamily{Rational(1)}}}};
  seq.sizes = sizes;
  return infinite_product_verdict(seq);
}

}  // namespace muind
