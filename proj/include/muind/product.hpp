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

#ifndef MUIND_PRODUCT_HPP
#define MUIND_PRODUCT_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "muind/measure.hpp"
#include "muind/perm.hpp"
#include "muind/rational.hpp"

namespace muind {

// A coordinate at a tail level: the constant k, or the last element n_i.
struct SymVal {
  enum class Kind { kConst, kLast };
  Kind kind = Kind::kConst;
  std::uint64_t k = 1;

  static SymVal constant(std::uint64_t k);
  static SymVal last() { return SymVal{Kind::kLast, 0}; }

  Integer concretize(const Integer& n) const;
  std::string to_string() const;

  bool operator==(const SymVal&) const = default;
  auto operator<=>(const SymVal&) const = default;
};

// Coordinates past a point's explicit prefix. A cycle is indexed by the
// absolute level: level i reads cycle[i mod cycle.size()].
class TailSelector {
 public:
  static TailSelector first() { return cycle({SymVal::constant(1)}); }
  static TailSelector last() { return cycle({SymVal::last()}); }
  static TailSelector kth(std::uint64_t k) { return cycle({SymVal::constant(k)}); }
  static TailSelector none() { return TailSelector(); }
  static TailSelector cycle(std::vector<SymVal> values);

  bool is_none() const noexcept { return cycle_.empty(); }
  std::size_t period() const noexcept { return cycle_.empty() ? 1 : cycle_.size(); }
  const std::vector<SymVal>& values() const noexcept { return cycle_; }
  // Throws UndecidableError for a none tail.
  const SymVal& at(std::size_t level) const;
  std::uint64_t max_constant() const noexcept;

  std::string to_string() const;
  bool operator==(const TailSelector&) const = default;

 private:
  std::vector<SymVal> cycle_;
};

struct ProductPoint {
  std::vector<Integer> coords;  // levels 0 .. coords.size()-1, values in [1, n_i]
  TailSelector tail;

  std::size_t explicit_depth() const noexcept { return coords.size(); }
  std::string to_string() const;
  bool operator==(const ProductPoint&) const = default;
};
using ProductPointSet = std::vector<ProductPoint>;

// G = prod_i S_{n_i} acting coordinatewise on X = prod_i [n_i].
class ProductStructure {
 public:
  static constexpr std::size_t kDefaultReportDepth = 64;
  // Largest level size for which S_{n_i} is enumerated as a cross-check.
  static constexpr unsigned kEnumerationLimit = 6;

  explicit ProductStructure(LevelSizes sizes, std::size_t report_depth = kDefaultReportDepth);

  const LevelSizes& sizes() const noexcept { return sizes_; }
  std::size_t report_depth() const noexcept { return report_depth_; }
  Integer n(std::size_t level) const { return sizes_.at_checked(level); }

  // Throws InputError for coordinates outside [1, n_i] and for tail constants
  // exceeding some tail level size.
  void validate(const ProductPoint& point) const;
  Integer value_at(const ProductPoint& point, std::size_t level) const;
  // Semantic equality of two points of X.
  bool same_point(const ProductPoint& x, const ProductPoint& y) const;

  // S_{n_i} on [n_i]; CapacityError past the enumeration cap.
  std::shared_ptr<const FiniteAction> level_action(std::size_t level) const;

 private:
  LevelSizes sizes_;
  std::size_t report_depth_;
};

// Beyond `horizon`, equalities between coordinates of the analysed points
// depend only on the level modulo `period`.
struct TailLayout {
  std::size_t horizon = 0;
  std::size_t period = 1;
  bool has_tail = true;

  std::size_t representative(std::size_t residue) const noexcept {
    return horizon + (residue + period - horizon % period) % period;
  }
};

// `margin` extra constants are kept below every tail level size.
TailLayout tail_layout(const ProductStructure& s, const std::vector<const ProductPoint*>& points,
                       std::uint64_t max_constant = 0, std::uint64_t margin = 0);

// p = |A(i)|, q = |B(i) \ A(i)|, r = |C(i) \ A(i)|, r' = |C(i) \ (A(i) u B(i))|.
struct SliceCounts {
  std::uint64_t p = 0, q = 0, r = 0, r_prime = 0;
  bool operator==(const SliceCounts&) const = default;
};

struct LevelSlices {
  TailLayout layout;
  std::vector<SliceCounts> levels;  // explicit levels 0 .. levels.size()-1
  std::vector<SliceCounts> tail;    // residue classes mod layout.period, levels >= horizon
};

LevelSlices analyze_slices(const ProductStructure& s, const ProductPointSet& c,
                           const ProductPointSet& a, const ProductPointSet& b);

enum class Verdict { kIndependent, kDependent, kUnknown };
enum class IndependenceKind { kMu, kNm, kM };

std::string to_string(Verdict v);
std::string to_string(IndependenceKind k);
std::optional<Verdict> verdict_from_string(const std::string& text);
std::optional<IndependenceKind> kind_from_string(const std::string& text);

// A set of levels: explicit members below the horizon plus whole residue
// classes beyond it.
struct LevelSet {
  enum class Tail { kEmpty, kFull, kPeriodicResidues, kUnknown };
  std::vector<std::size_t> explicit_levels;
  std::vector<std::size_t> residues;
  std::size_t period = 1;
  Tail tail = Tail::kEmpty;

  bool infinite() const noexcept { return tail == Tail::kFull || tail == Tail::kPeriodicResidues; }
};
std::string to_string(LevelSet::Tail t);

struct LevelRow {
  std::size_t level = 0;
  Integer n;
  SliceCounts counts;
  Rational ratio;        // |G_AB G_AC| / |G_A| at this level
  Rational running;      // product of ratios up to and including this level
  bool full_product = false;  // G_AC G_AB == G_A at this level
  Integer orbit_over_a;  // |o(C(i) / A(i))|
  Integer orbit_over_ab; // |o(C(i) / A(i) B(i))|
  bool enumerated = false;
};

struct IndependenceVerdict {
  IndependenceKind kind = IndependenceKind::kMu;
  Verdict verdict = Verdict::kUnknown;
  LevelSlices slices;
  std::vector<LevelRow> rows;
  LevelSet deficiency;  // r' < r
  LevelSet defect;      // nm: product set is not all of G_A; m: orbits differ
  std::optional<ProductVerdict> product;
  std::optional<std::size_t> stabilizes_from;
  std::optional<std::size_t> failure_level;
  std::string detail;
};

IndependenceVerdict mu_independent(const ProductStructure& s, const ProductPointSet& c,
                                   const ProductPointSet& a, const ProductPointSet& b);
IndependenceVerdict nm_independent(const ProductStructure& s, const ProductPointSet& c,
                                   const ProductPointSet& a, const ProductPointSet& b);
IndependenceVerdict m_independent(const ProductStructure& s, const ProductPointSet& c,
                                  const ProductPointSet& a, const ProductPointSet& b);
IndependenceVerdict independent(IndependenceKind kind, const ProductStructure& s,
                                const ProductPointSet& c, const ProductPointSet& a,
                                const ProductPointSet& b);

// An element (g_i) of G with finite support at the explicit levels
// [0, explicit.size()) and a symbolic value map per residue class beyond.
class ProductElement {
 public:
  using LevelMap = std::map<Integer, Integer>;
  using TailMap = std::vector<std::pair<SymVal, SymVal>>;

  ProductElement() = default;
  ProductElement(std::vector<LevelMap> explicit_levels, std::vector<TailMap> tail_maps);

  const std::vector<LevelMap>& explicit_levels() const noexcept { return explicit_; }
  const std::vector<TailMap>& tail_maps() const noexcept { return tail_; }
  std::size_t tail_start() const noexcept { return explicit_.size(); }
  std::size_t tail_period() const noexcept { return tail_.empty() ? 1 : tail_.size(); }
  std::uint64_t max_constant() const noexcept;

  // Throws InputError unless every level map is a bijection of its support
  // inside [1, n_i].
  void validate(const ProductStructure& s) const;
  Integer apply_at(const ProductStructure& s, std::size_t level, const Integer& value) const;
  ProductPoint apply(const ProductStructure& s, const ProductPoint& x) const;
  ProductPointSet apply(const ProductStructure& s, const ProductPointSet& xs) const;
  bool fixes(const ProductStructure& s, const ProductPointSet& xs) const;

  std::string to_string() const;

 private:
  std::vector<LevelMap> explicit_;
  std::vector<TailMap> tail_;
};

struct ExtensionWitness {
  ProductElement sigma;
  ProductPointSet moved;  // sigma applied to c
  IndependenceVerdict verdict;  // mu_independent(moved, a, b)
  std::vector<std::size_t> unresolved_levels;
};

// sigma fixes A pointwise and moves every coordinate of C outside A off B,
// using the smallest fresh values.
ExtensionWitness extension_witness(const ProductStructure& s, const ProductPointSet& c,
                                   const ProductPointSet& a, const ProductPointSet& b);

struct CounterexampleRow {
  std::size_t level = 0;
  Integer n;
  Rational x;             // target lower bound for this level
  Rational ratio;         // |H1 H2| / |S_n|
  Rational running;
  bool enumerated = false;
  std::optional<std::uint64_t> product_size;
  std::optional<Integer> size_bound;  // (n-1)! (n-1)
  bool proper = false;                // H1 H2 != S_n
};

struct CounterexampleProfile {
  std::vector<CounterexampleRow> rows;
  Rational running = 1;
  bool exceeds_half = false;
  bool all_proper = true;
  bool overridden = false;
  LevelSizes sizes = LevelSizes::geometric(2, 2);
  ProductPoint a, b;
  IndependenceVerdict mu;
  IndependenceVerdict nm;
};

// x_i = 1 - 2^-(i+2), n_i = ceil(1 / (1 - x_i)); H1 = stab(n_i), H2 = stab(1).
// `sizes` replaces the level sizes by a finite table.
CounterexampleProfile counterexample_profile(
    std::size_t levels, const std::optional<std::vector<Integer>>& sizes = std::nullopt);

struct DependenceChain {
  ProductPointSet c;
  std::vector<ProductPoint> parameters;  // P_0 .. P_{k-1}
  std::vector<ProductPointSet> sets;     // sets[j] = {P_0 .. P_{j-1}}, sets[0] empty
  std::vector<IndependenceVerdict> steps;  // c against sets[j+1] over sets[j]
  bool all_dependent = false;
};

// P_j agrees with c[0] exactly on the levels congruent to j mod k.
std::vector<ProductPoint> residue_collision_points(const ProductStructure& s,
                                                   const ProductPoint& c, unsigned k);
DependenceChain mu_rank_infinite_witness(const ProductStructure& s, const ProductPointSet& c,
                                         unsigned k);

}  // namespace muind

#endif  // MUIND_PRODUCT_HPP
