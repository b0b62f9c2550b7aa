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


#ifndef MUIND_RANK_HPP
#define MUIND_RANK_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "muind/perm.hpp"
#include "muind/product.hpp"
#include "muind/tree.hpp"

namespace muind {

// Points are ids into the oracle's registry. Sets are sorted and duplicate-free.
using PointId = std::size_t;
using PointSet = std::vector<PointId>;

PointSet make_set(std::vector<PointId> ids);
PointSet set_union(const PointSet& x, const PointSet& y);
bool is_subset(const PointSet& x, const PointSet& y);

// Three-valued independence a |_A B over a registry of points. Verdicts must
// be pure functions of the arguments.
class IndependenceOracle {
 public:
  virtual ~IndependenceOracle() = default;
  virtual std::string name() const = 0;
  virtual std::size_t size() const = 0;
  virtual std::string label(PointId p) const = 0;
  virtual Verdict mu(const PointSet& a, const PointSet& base, const PointSet& other) const = 0;
  // Defaults to Unknown for oracles without an nm notion.
  virtual Verdict nm(const PointSet& a, const PointSet& base, const PointSet& other) const;
  std::string label(const PointSet& s) const;
};

class ProductOracle final : public IndependenceOracle {
 public:
  explicit ProductOracle(ProductStructure s) : s_(std::move(s)) {}
  PointId add(ProductPoint p);
  const ProductStructure& structure() const noexcept { return s_; }
  const ProductPoint& point(PointId p) const { return points_.at(p); }

  std::string name() const override { return "product of symmetric groups, " + s_.sizes().describe(); }
  std::size_t size() const override { return points_.size(); }
  std::string label(PointId p) const override { return points_.at(p).to_string(); }
  Verdict mu(const PointSet& a, const PointSet& base, const PointSet& other) const override;
  Verdict nm(const PointSet& a, const PointSet& base, const PointSet& other) const override;

 private:
  ProductPointSet resolve(const PointSet& ids) const;
  ProductStructure s_;
  std::vector<ProductPoint> points_;
};

class BranchOracle final : public IndependenceOracle {
 public:
  explicit BranchOracle(std::shared_ptr<const TruncatedTreeGroup> g) : g_(std::move(g)) {}
  PointId add(BoundaryPoint p);
  const TruncatedTreeGroup& group() const noexcept { return *g_; }
  const BoundaryPoint& point(PointId p) const { return points_.at(p); }

  std::string name() const override { return g_->describe(); }
  std::size_t size() const override { return points_.size(); }
  std::string label(PointId p) const override { return points_.at(p).to_string(); }
  Verdict mu(const PointSet& a, const PointSet& base, const PointSet& other) const override;
  Verdict nm(const PointSet& a, const PointSet& base, const PointSet& other) const override;
  BranchVerdict query(const PointSet& a, const PointSet& base, const PointSet& other) const;

 private:
  std::vector<BoundaryPoint> resolve(const PointSet& ids) const;
  std::shared_ptr<const TruncatedTreeGroup> g_;
  std::vector<BoundaryPoint> points_;
};

// |G_AB G_Aa| / |G_A| in a finite permutation group; always positive.
struct FiniteIndependence {
  Rational measure;
  std::uint64_t product_size = 0;
  std::uint64_t base_order = 0;
  std::size_t orbit_over_a = 0;
  std::size_t orbit_over_ab = 0;
};
FiniteIndependence finite_independence(const std::shared_ptr<const FiniteAction>& action,
                                       const Tuple& a, const Tuple& base, const Tuple& other);

class FiniteOracle final : public IndependenceOracle {
 public:
  // Registry is the action's point set.
  explicit FiniteOracle(std::shared_ptr<const FiniteAction> action) : action_(std::move(action)) {}
  std::string name() const override { return "finite permutation group of order " + std::to_string(action_->order()); }
  std::size_t size() const override { return action_->degree(); }
  std::string label(PointId p) const override { return action_->points().at(p); }
  Verdict mu(const PointSet& a, const PointSet& base, const PointSet& other) const override;
  Verdict nm(const PointSet& a, const PointSet& base, const PointSet& other) const override;

 private:
  std::shared_ptr<const FiniteAction> action_;
};

// a is dependent on B over A iff some point of a lies in cl(A u B) \ cl(A).
class ClosureOracle final : public IndependenceOracle {
 public:
  using Closure = std::function<PointSet(const PointSet&)>;
  ClosureOracle(std::size_t points, Closure closure, std::string name)
      : points_(points), closure_(std::move(closure)), name_(std::move(name)) {}
  // Three points where cl(S) = S plus 2 whenever 0 is in S; exchange fails.
  static std::shared_ptr<ClosureOracle> exchange_counterexample();

  std::string name() const override { return name_; }
  std::size_t size() const override { return points_; }
  std::string label(PointId p) const override { return std::to_string(p); }
  Verdict mu(const PointSet& a, const PointSet& base, const PointSet& other) const override;

 private:
  std::size_t points_;
  Closure closure_;
  std::string name_;
};

// Memoizes another oracle; safe for concurrent use.
class CachedOracle final : public IndependenceOracle {
 public:
  explicit CachedOracle(std::shared_ptr<const IndependenceOracle> inner) : inner_(std::move(inner)) {}
  std::string name() const override { return inner_->name(); }
  std::size_t size() const override { return inner_->size(); }
  std::string label(PointId p) const override { return inner_->label(p); }
  Verdict mu(const PointSet& a, const PointSet& base, const PointSet& other) const override;
  Verdict nm(const PointSet& a, const PointSet& base, const PointSet& other) const override;
  std::size_t queries() const;
  std::size_t hits() const;

 private:
  using Key = std::tuple<bool, PointSet, PointSet, PointSet>;
  Verdict lookup(bool nm, const PointSet& a, const PointSet& base, const PointSet& other) const;
  std::shared_ptr<const IndependenceOracle> inner_;
  mutable std::mutex mu_;
  mutable std::map<Key, Verdict> memo_;
  mutable std::size_t queries_ = 0, hits_ = 0;
};

// Candidate parameter sets B over a base A: A plus one pool point, or A plus
// any pool subset of size at most `max_subset`.
struct CandidatePool {
  enum class Mode { kSinglePoint, kSubsets };
  PointSet points;
  Mode mode = Mode::kSinglePoint;
  std::size_t max_subset = 1;

  static CandidatePool single(PointSet points);
  static CandidatePool subsets(PointSet points, std::size_t max_subset);
  // Proper supersets of `base`, in a fixed order.
  std::vector<PointSet> extensions(const PointSet& base) const;
  std::string describe() const;
};

struct RankResult {
  enum class Kind { kExact, kAtLeast, kInfiniteWitnessed, kUnknown };
  Kind kind = Kind::kUnknown;
  std::size_t value = 0;  // exact value, or the witnessed lower bound
  std::vector<PointSet> chain;  // A = chain[0] < chain[1] < ... each step dependent
  std::size_t bound = 0;
  CandidatePool pool;
  std::size_t queries = 0;
  std::vector<std::string> step_details;  // certificate of each chain step, when recorded
  std::string detail;

  bool exact() const noexcept { return kind == Kind::kExact; }
  std::string to_string() const;
};
std::string to_string(RankResult::Kind k);

// Longest chain A = A_0 < A_1 < ... < A_k over the pool with a dependent on
// A_{j+1} over A_j, searched exhaustively up to `bound`. The points of a are
// added to the pool.
RankResult mu_rank(const IndependenceOracle& oracle, const PointSet& a, const PointSet& base,
                   CandidatePool pool, std::size_t bound);

// Rank of c in the product family certified by the residue-collision chains
// for every length up to k. Chain points are added to `registry`.
RankResult product_infinite_rank(ProductOracle& registry, const ProductPointSet& c, unsigned k);

struct LascarSample {
  PointSet a, b, base;
};
struct LascarOutcome {
  LascarSample sample;
  bool skipped = false;
  std::size_t r_a_over_ab = 0, r_b_over_a = 0, r_ab_over_a = 0, r_a_over_a = 0;
  bool independent = false;
  bool lower_ok = false, upper_ok = false, equality_ok = true, sum_ok = true;
  std::string note;
};
struct LascarReport {
  std::vector<LascarOutcome> outcomes;
  std::size_t checked = 0, skipped = 0, failures = 0;
  bool passed() const noexcept { return failures == 0; }
};
using RankFunction = std::function<RankResult(const PointSet& a, const PointSet& base)>;
LascarReport lascar_check(const IndependenceOracle& oracle, const RankFunction& rank,
                          const std::vector<LascarSample>& samples);

struct AxiomCheck {
  bool passed = true;
  std::string witness;  // first failure
};
struct PregeometryReport {
  PointSet pool;
  PointSet base;
  std::map<PointSet, PointSet> closures;  // every pool subset up to the size limit
  AxiomCheck extensive, closure, monotone, finite_character, exchange;
  bool trivial = true;
  std::size_t subsets_checked = 0;
  bool passed() const noexcept {
    return extensive.passed && closure.passed && monotone.passed && finite_character.passed &&
           exchange.passed;
  }
};
// Closure over A: cl(S) = S plus every pool point of rank 0 over A plus every
// pool point dependent on S over A. Throws InputError when a pool point has
// rank >= 2 over A.
PregeometryReport pregeometry_check(const IndependenceOracle& oracle, const PointSet& pool,
                                    const PointSet& base, std::size_t max_subset = 4);

// H acting on itself by left translation; the orbit is o(a / A) for a point a
// and finite A inside H.
struct GenericOrbitReport {
  Rational measure;            // |o| / |H|
  bool positive = false;
  bool translation_generic = false;  // ba |_A b whenever a |_A b
  std::size_t translations_checked = 0;
  bool agree = false;
};
GenericOrbitReport generic_orbit_check(const std::shared_ptr<const FiniteAction>& group,
                                       const Perm& a, const std::vector<Perm>& base);

// Orbit of a in prod S_{n_i} acting on itself over a base A: the whole group
// when A is empty, the singleton otherwise.
ProductVerdict product_orbit_measure(const LevelSizes& sizes, bool singleton);

}  // namespace muind

#endif  // MUIND_RANK_HPP
