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

#include "muind/product.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "muind/errors.hpp"

namespace muind {

SymVal SymVal::constant(std::uint64_t k) {
  if (k == 0) throw InputError("tail constants start at 1");
  return SymVal{Kind::kConst, k};
}

Integer SymVal::concretize(const Integer& n) const {
  return kind == Kind::kLast ? n : to_integer(k);
}

std::string SymVal::to_string() const {
  if (kind == Kind::kLast) return "last";
  if (k == 1) return "first";
  return "k" + std::to_string(k);
}

TailSelector TailSelector::cycle(std::vector<SymVal> values) {
  if (values.empty()) throw InputError("tail cycle must not be empty");
  // Reduce to the minimal period.
  for (std::size_t p = 1; p < values.size(); ++p) {
    if (values.size() % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < values.size() && ok; ++i) ok = values[i] == values[i - p];
    if (ok) {
      values.resize(p);
      break;
    }
  }
  TailSelector t;
  t.cycle_ = std::move(values);
  return t;
}

const SymVal& TailSelector::at(std::size_t level) const {
  if (cycle_.empty()) throw UndecidableError("point has no tail past its explicit coordinates");
  return cycle_[level % cycle_.size()];
}

std::uint64_t TailSelector::max_constant() const noexcept {
  std::uint64_t m = 0;
  for (const auto& v : cycle_)
    if (v.kind == SymVal::Kind::kConst) m = std::max(m, v.k);
  return m;
}

std::string TailSelector::to_string() const {
  if (cycle_.empty()) return "none";
  if (cycle_.size() == 1) return cycle_[0].to_string();
  std::string out = "cycle(";
  for (std::size_t i = 0; i < cycle_.size(); ++i) out += (i ? "," : "") + cycle_[i].to_string();
  return out + ")";
}

std::string ProductPoint::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coords.size(); ++i) out += (i ? "," : "") + coords[i].get_str();
  if (coords.empty()) return tail.to_string();
  return out + ";" + tail.to_string();
}

ProductStructure::ProductStructure(LevelSizes sizes, std::size_t report_depth)
    : sizes_(std::move(sizes)), report_depth_(report_depth) {}

namespace {

std::size_t lcm_size(std::size_t a, std::size_t b) { return std::lcm(a, b); }

// Levels whose sizes bound every later level of the same residue class mod `period`.
std::vector<std::size_t> check_window(const LevelSizes& sizes, std::size_t from,
                                      std::size_t period) {
  std::vector<std::size_t> out;
  if (sizes.kind() == LevelSizes::Kind::kTable) {
    for (std::size_t i = from; i < sizes.values().size(); ++i) out.push_back(i);
    return out;
  }
  std::size_t span = sizes.unbounded() ? period : lcm_size(period, sizes.period());
  for (std::size_t i = from; i < from + span; ++i) out.push_back(i);
  return out;
}

}  // namespace

void ProductStructure::validate(const ProductPoint& point) const {
  for (std::size_t i = 0; i < point.coords.size(); ++i) {
    auto n = sizes_.at(i);
    if (!n) throw InputError("coordinate at level " + std::to_string(i) + " lies past the level table");
    if (point.coords[i] < 1 || point.coords[i] > *n)
      throw InputError("coordinate " + point.coords[i].get_str() + " at level " + std::to_string(i) +
                       " is outside [1, " + n->get_str() + "]");
  }
  if (point.tail.is_none()) return;
  for (std::size_t i : check_window(sizes_, point.explicit_depth(), point.tail.period())) {
    const SymVal& v = point.tail.at(i);
    if (v.kind == SymVal::Kind::kConst && to_integer(v.k) > sizes_.at_checked(i))
      throw InputError("tail value " + v.to_string() + " exceeds the level size at level " +
                       std::to_string(i));
  }
}

Integer ProductStructure::value_at(const ProductPoint& point, std::size_t level) const {
  if (level < point.coords.size()) return point.coords[level];
  return point.tail.at(level).concretize(n(level));
}

std::shared_ptr<const FiniteAction> ProductStructure::level_action(std::size_t level) const {
  Integer nl = n(level);
  if (nl > 10) throw CapacityError("S_" + nl.get_str() + " is too large to enumerate");
  return FiniteAction::symmetric(static_cast<unsigned>(nl.get_ui()));
}

TailLayout tail_layout(const ProductStructure& s, const std::vector<const ProductPoint*>& points,
                       std::uint64_t max_constant, std::uint64_t margin) {
  TailLayout layout;
  std::size_t depth = 0;
  std::uint64_t k = max_constant;
  for (const ProductPoint* p : points) {
    s.validate(*p);
    depth = std::max(depth, p->explicit_depth());
    k = std::max(k, p->tail.max_constant());
  }
  const LevelSizes& sizes = s.sizes();
  if (!sizes.has_tail()) {
    layout.has_tail = false;
    layout.horizon = sizes.values().size();
    if (depth > layout.horizon) throw InputError("point coordinates extend past the level table");
    return layout;
  }
  std::size_t period = sizes.period();
  for (const ProductPoint* p : points) {
    if (p->tail.is_none())
      throw UndecidableError("point " + p->to_string() + " has no tail; tail levels are undecidable");
    period = lcm_size(period, p->tail.period());
  }
  layout.period = period;
  if (sizes.unbounded()) {
    // Past the horizon every constant and `margin` fresh values stay below n_i.
    Integer bound = to_integer(k) + to_integer(margin) + 2;
    layout.horizon = *sizes.first_level_at_least(bound, depth);
  } else {
    layout.horizon = depth;
  }
  return layout;
}

namespace {

using Values = std::vector<Integer>;

Values values_at(const ProductStructure& s, const ProductPointSet& xs, std::size_t level) {
  Values out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(s.value_at(x, level));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool has(const Values& v, const Integer& x) { return std::binary_search(v.begin(), v.end(), x); }

struct LevelValues {
  Values a, b, c;
};

LevelValues level_values(const ProductStructure& s, const ProductPointSet& c,
                         const ProductPointSet& a, const ProductPointSet& b, std::size_t level) {
  return {values_at(s, a, level), values_at(s, b, level), values_at(s, c, level)};
}

SliceCounts count(const LevelValues& v) {
  SliceCounts out;
  out.p = v.a.size();
  for (const auto& x : v.b)
    if (!has(v.a, x)) ++out.q;
  for (const auto& x : v.c) {
    if (has(v.a, x)) continue;
    ++out.r;
    if (!has(v.b, x)) ++out.r_prime;
  }
  return out;
}

std::vector<const ProductPoint*> pointers(std::initializer_list<const ProductPointSet*> sets) {
  std::vector<const ProductPoint*> out;
  for (const auto* set : sets)
    for (const auto& x : *set) out.push_back(&x);
  return out;
}

bool full_product(const Integer& n, const SliceCounts& k) {
  return n - to_integer(k.p) <= 1 || k.q == 0 || k.r == 0;
}

Integer orbit_over_a(const Integer& n, const SliceCounts& k) {
  return falling_factorial(n - to_integer(k.p), k.r);
}

Integer orbit_over_ab(const Integer& n, const SliceCounts& k) {
  return falling_factorial(n - to_integer(k.p) - to_integer(k.q), k.r_prime);
}

Tuple as_points(const Values& v) {
  Tuple out;
  for (const auto& x : v) out.push_back(static_cast<Point>(x.get_ui() - 1));
  return out;
}

Tuple joined(const Values& x, const Values& y) {
  Tuple out = as_points(x);
  Tuple more = as_points(y);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

// Recomputes a level row inside S_n by enumeration.
void enumerate_level(const ProductStructure& s, const LevelValues& v, LevelRow& row) {
  auto action = s.level_action(row.level);
  Subgroup g_a = pointwise_stabilizer(action, as_points(v.a));
  Subgroup g_ab = pointwise_stabilizer(action, joined(v.a, v.b));
  Subgroup g_ac = pointwise_stabilizer(action, joined(v.a, v.c));
  ElementSet prod = product_set(g_ab, g_ac);
  Rational ratio = make_rational(Integer(static_cast<unsigned long>(prod.size())),
                                 Integer(static_cast<unsigned long>(g_a.size())));
  Tuple ctuple = as_points(v.c);
  auto orb_a = orbit(g_a, ctuple).size();
  auto orb_ab = orbit(g_ab, ctuple).size();
  if (ratio != row.ratio || (prod.size() == g_a.size()) != row.full_product ||
      Integer(static_cast<unsigned long>(orb_a)) != row.orbit_over_a ||
      Integer(static_cast<unsigned long>(orb_ab)) != row.orbit_over_ab)
    throw InternalError("level " + std::to_string(row.level) +
                        ": closed form disagrees with enumeration");
  row.enumerated = true;
}

std::vector<LevelRow> level_rows(const ProductStructure& s, const ProductPointSet& c,
                                 const ProductPointSet& a, const ProductPointSet& b,
                                 const LevelSlices& slices) {
  std::vector<LevelRow> rows;
  Rational running = 1;
  for (std::size_t i = 0; i < slices.levels.size(); ++i) {
    LevelRow row;
    row.level = i;
    row.n = s.n(i);
    row.counts = slices.levels[i];
    row.ratio = slice_ratio(row.n, row.counts.p, row.counts.q, row.counts.r, row.counts.r_prime);
    running *= row.ratio;
    row.running = running;
    row.full_product = full_product(row.n, row.counts);
    row.orbit_over_a = orbit_over_a(row.n, row.counts);
    row.orbit_over_ab = orbit_over_ab(row.n, row.counts);
    if (row.n <= ProductStructure::kEnumerationLimit)
      enumerate_level(s, level_values(s, c, a, b, i), row);
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename Pred>
LevelSet collect_levels(const LevelSlices& slices, const std::vector<LevelRow>& rows,
                        const ProductStructure& s, Pred bad) {
  LevelSet out;
  out.period = slices.layout.period;
  std::size_t explicit_end = slices.layout.has_tail ? slices.layout.horizon : rows.size();
  for (std::size_t i = 0; i < explicit_end && i < rows.size(); ++i)
    if (bad(rows[i].n, rows[i].counts)) out.explicit_levels.push_back(i);
  if (!slices.layout.has_tail) {
    out.tail = LevelSet::Tail::kUnknown;
    return out;
  }
  for (std::size_t rho = 0; rho < slices.tail.size(); ++rho) {
    Integer n = s.n(slices.layout.representative(rho));
    if (bad(n, slices.tail[rho])) out.residues.push_back(rho);
  }
  if (out.residues.empty())
    out.tail = LevelSet::Tail::kEmpty;
  else if (out.residues.size() == slices.tail.size())
    out.tail = LevelSet::Tail::kFull;
  else
    out.tail = LevelSet::Tail::kPeriodicResidues;
  return out;
}

bool deficient(const Integer&, const SliceCounts& k) { return k.r_prime < k.r; }

void check_sets(const ProductPointSet& c) {
  if (c.empty()) throw InputError("the independence query needs at least one point in c");
}

}  // namespace

bool ProductStructure::same_point(const ProductPoint& x, const ProductPoint& y) const {
  TailLayout layout = tail_layout(*this, {&x, &y});
  for (std::size_t i = 0; i < layout.horizon; ++i)
    if (value_at(x, i) != value_at(y, i)) return false;
  if (!layout.has_tail) return true;
  for (std::size_t rho = 0; rho < layout.period; ++rho) {
    std::size_t i = layout.representative(rho);
    if (value_at(x, i) != value_at(y, i)) return false;
  }
  return true;
}

LevelSlices analyze_slices(const ProductStructure& s, const ProductPointSet& c,
                           const ProductPointSet& a, const ProductPointSet& b) {
  LevelSlices out;
  out.layout = tail_layout(s, pointers({&c, &a, &b}));
  std::size_t rows = out.layout.has_tail ? std::max(out.layout.horizon, s.report_depth())
                                         : out.layout.horizon;
  for (std::size_t i = 0; i < rows; ++i) out.levels.push_back(count(level_values(s, c, a, b, i)));
  if (out.layout.has_tail) {
    for (std::size_t rho = 0; rho < out.layout.period; ++rho)
      out.tail.push_back(count(level_values(s, c, a, b, out.layout.representative(rho))));
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kIndependent: return "independent";
    case Verdict::kDependent: return "dependent";
    case Verdict::kUnknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(IndependenceKind k) {
  switch (k) {
    case IndependenceKind::kMu: return "mu";
    case IndependenceKind::kNm: return "nm";
    case IndependenceKind::kM: return "m";
  }
  return "mu";
}

std::optional<Verdict> verdict_from_string(const std::string& text) {
  for (auto v : {Verdict::kIndependent, Verdict::kDependent, Verdict::kUnknown})
    if (to_string(v) == text) return v;
  return std::nullopt;
}

std::optional<IndependenceKind> kind_from_string(const std::string& text) {
  for (auto k : {IndependenceKind::kMu, IndependenceKind::kNm, IndependenceKind::kM})
    if (to_string(k) == text) return k;
  return std::nullopt;
}

std::string to_string(LevelSet::Tail t) {
  switch (t) {
    case LevelSet::Tail::kEmpty: return "empty";
    case LevelSet::Tail::kFull: return "full";
    case LevelSet::Tail::kPeriodicResidues: return "periodic-residues";
    case LevelSet::Tail::kUnknown: return "unknown";
  }
  return "unknown";
}

IndependenceVerdict mu_independent(const ProductStructure& s, const ProductPointSet& c,
                                   const ProductPointSet& a, const ProductPointSet& b) {
  check_sets(c);
  IndependenceVerdict out;
  out.kind = IndependenceKind::kMu;
  out.slices = analyze_slices(s, c, a, b);
  out.rows = level_rows(s, c, a, b, out.slices);
  out.deficiency = collect_levels(out.slices, out.rows, s, deficient);

  RatioSequence seq;
  const TailLayout& layout = out.slices.layout;
  std::size_t prefix = layout.has_tail ? layout.horizon : out.rows.size();
  for (std::size_t i = 0; i < prefix; ++i) seq.prefix.push_back(out.rows[i].ratio);
  if (layout.has_tail) {
    RatioTail tail;
    tail.start = layout.horizon;
    for (const auto& k : out.slices.tail)
      tail.families.push_back(SliceFamily{k.p, k.q, k.r, k.r_prime});
    seq.tail = std::move(tail);
  }
  seq.sizes = s.sizes();
  out.product = infinite_product_verdict(seq, out.rows.size());
  switch (out.product->sign) {
    case ProductSign::kPositive: out.verdict = Verdict::kIndependent; break;
    case ProductSign::kZero: out.verdict = Verdict::kDependent; break;
    case ProductSign::kUnknown: out.verdict = Verdict::kUnknown; break;
  }
  out.detail = out.product->detail;
  return out;
}

namespace {

IndependenceVerdict cofinite_verdict(IndependenceKind kind, const ProductStructure& s,
                                     const ProductPointSet& c, const ProductPointSet& a,
                                     const ProductPointSet& b) {
  check_sets(c);
  IndependenceVerdict out;
  out.kind = kind;
  out.slices = analyze_slices(s, c, a, b);
  out.rows = level_rows(s, c, a, b, out.slices);
  out.deficiency = collect_levels(out.slices, out.rows, s, deficient);
  if (kind == IndependenceKind::kNm) {
    out.defect = collect_levels(out.slices, out.rows, s, [](const Integer& n, const SliceCounts& k) {
      return !full_product(n, k);
    });
  } else {
    out.defect = collect_levels(out.slices, out.rows, s, [](const Integer& n, const SliceCounts& k) {
      return orbit_over_a(n, k) != orbit_over_ab(n, k);
    });
  }
  const std::string what = kind == IndependenceKind::kNm ? "G_AC G_AB = G_A" : "o(C/AB) = o(C/A)";
  if (!out.slices.layout.has_tail) {
    out.verdict = Verdict::kUnknown;
    out.detail = "level sizes end at a finite table; cofiniteness of {i : " + what + "} is undecidable";
  } else if (out.defect.residues.empty()) {
    out.verdict = Verdict::kIndependent;
    out.stabilizes_from = out.defect.explicit_levels.empty() ? 0 : out.defect.explicit_levels.back() + 1;
    out.detail = what + " holds at every level from " + std::to_string(*out.stabilizes_from);
  } else {
    out.verdict = Verdict::kDependent;
    out.failure_level = out.slices.layout.representative(out.defect.residues.front());
    out.detail = what + " fails on every level congruent to " +
                 std::to_string(out.defect.residues.front()) + " mod " +
                 std::to_string(out.defect.period) + " past level " +
                 std::to_string(out.slices.layout.horizon);
  }
  return out;
}

}  // namespace

IndependenceVerdict nm_independent(const ProductStructure& s, const ProductPointSet& c,
                                   const ProductPointSet& a, const ProductPointSet& b) {
  return cofinite_verdict(IndependenceKind::kNm, s, c, a, b);
}

IndependenceVerdict m_independent(const ProductStructure& s, const ProductPointSet& c,
                                  const ProductPointSet& a, const ProductPointSet& b) {
  return cofinite_verdict(IndependenceKind::kM, s, c, a, b);
}

IndependenceVerdict independent(IndependenceKind kind, const ProductStructure& s,
                                const ProductPointSet& c, const ProductPointSet& a,
                                const ProductPointSet& b) {
  switch (kind) {
    case IndependenceKind::kMu: return mu_independent(s, c, a, b);
    case IndependenceKind::kNm: return nm_independent(s, c, a, b);
    case IndependenceKind::kM: return m_independent(s, c, a, b);
  }
  throw InternalError("unknown independence kind");
}

ProductElement::ProductElement(std::vector<LevelMap> explicit_levels, std::vector<TailMap> tail_maps)
    : explicit_(std::move(explicit_levels)), tail_(std::move(tail_maps)) {}

std::uint64_t ProductElement::max_constant() const noexcept {
  std::uint64_t m = 0;
  for (const auto& map : tail_)
    for (const auto& [from, to] : map) {
      if (from.kind == SymVal::Kind::kConst) m = std::max(m, from.k);
      if (to.kind == SymVal::Kind::kConst) m = std::max(m, to.k);
    }
  return m;
}

void ProductElement::validate(const ProductStructure& s) const {
  for (std::size_t i = 0; i < explicit_.size(); ++i) {
    auto n = s.sizes().at(i);
    if (!n) throw InputError("element level " + std::to_string(i) + " lies past the level table");
    std::set<Integer> from, to;
    for (const auto& [x, y] : explicit_[i]) {
      if (x < 1 || x > *n || y < 1 || y > *n)
        throw InputError("element value outside [1, n_i] at level " + std::to_string(i));
      from.insert(x);
      to.insert(y);
    }
    if (from != to) throw InputError("element is not a bijection at level " + std::to_string(i));
  }
  for (std::size_t rho = 0; rho < tail_.size(); ++rho) {
    std::set<SymVal> from, to;
    for (const auto& [x, y] : tail_[rho]) {
      if (!from.insert(x).second) throw InputError("tail map repeats a source value");
      to.insert(y);
    }
    if (from != to) throw InputError("tail map is not a bijection of its support");
  }
  if (tail_.empty() || !s.sizes().has_tail()) return;
  if (s.sizes().unbounded()) {
    if (s.n(tail_start()) <= to_integer(max_constant()))
      throw InputError("tail map constants must stay below n_i from the first tail level");
    return;
  }
  for (std::size_t i : check_window(s.sizes(), tail_start(), tail_period())) {
    Integer n = s.n(i);
    std::set<Integer> seen;
    for (const auto& [x, y] : tail_[i % tail_period()]) {
      Integer cx = x.concretize(n);
      if (cx > n || y.concretize(n) > n) throw InputError("tail map value exceeds n_i");
      if (!seen.insert(cx).second) throw InputError("tail map is not injective at level " + std::to_string(i));
    }
  }
}

Integer ProductElement::apply_at(const ProductStructure& s, std::size_t level,
                                 const Integer& value) const {
  if (level < explicit_.size()) {
    auto it = explicit_[level].find(value);
    return it == explicit_[level].end() ? value : it->second;
  }
  if (tail_.empty()) return value;
  Integer n = s.n(level);
  for (const auto& [x, y] : tail_[level % tail_period()])
    if (x.concretize(n) == value) return y.concretize(n);
  return value;
}

ProductPoint ProductElement::apply(const ProductStructure& s, const ProductPoint& x) const {
  TailLayout layout = tail_layout(s, {&x}, max_constant());
  ProductPoint out;
  if (!layout.has_tail) {
    for (std::size_t i = 0; i < layout.horizon; ++i)
      out.coords.push_back(apply_at(s, i, s.value_at(x, i)));
    return out;
  }
  std::size_t horizon = std::max(layout.horizon, tail_start());
  for (std::size_t i = 0; i < horizon; ++i) out.coords.push_back(apply_at(s, i, s.value_at(x, i)));
  layout.horizon = horizon;
  layout.period = std::lcm(layout.period, tail_period());
  std::vector<SymVal> cycle(layout.period);
  for (std::size_t rho = 0; rho < layout.period; ++rho) {
    std::size_t i = layout.representative(rho);
    const SymVal& v = x.tail.at(i);
    cycle[rho] = v;
    if (tail_.empty()) continue;
    Integer n = s.n(i);
    for (const auto& [from, to] : tail_[i % tail_period()])
      if (from.concretize(n) == v.concretize(n)) cycle[rho] = to;
  }
  out.tail = TailSelector::cycle(std::move(cycle));
  return out;
}

ProductPointSet ProductElement::apply(const ProductStructure& s, const ProductPointSet& xs) const {
  ProductPointSet out;
  for (const auto& x : xs) out.push_back(apply(s, x));
  return out;
}

bool ProductElement::fixes(const ProductStructure& s, const ProductPointSet& xs) const {
  for (const auto& x : xs)
    if (!s.same_point(apply(s, x), x)) return false;
  return true;
}

std::string ProductElement::to_string() const {
  std::string out;
  auto sep = [&] { if (!out.empty()) out += "; "; };
  for (std::size_t i = 0; i < explicit_.size(); ++i) {
    if (explicit_[i].empty()) continue;
    sep();
    out += "level " + std::to_string(i) + ":";
    for (const auto& [x, y] : explicit_[i]) out += " " + x.get_str() + "->" + y.get_str();
  }
  for (std::size_t rho = 0; rho < tail_.size(); ++rho) {
    if (tail_[rho].empty()) continue;
    sep();
    out += "levels >= " + std::to_string(tail_start()) + " congruent to " + std::to_string(rho) +
           " mod " + std::to_string(tail_period()) + ":";
    for (const auto& [x, y] : tail_[rho]) out += " " + x.to_string() + "->" + y.to_string();
  }
  return out.empty() ? "identity" : out;
}

namespace {

// Pairs each coordinate of C outside A that lies in B with the smallest unused
// fresh value. Returns the pairs and whether enough fresh values existed.
std::pair<std::vector<std::pair<Integer, Integer>>, bool> collisions_to_fresh(const LevelValues& v,
                                                                             const Integer& n) {
  std::vector<Integer> collisions;
  for (const auto& x : v.c)
    if (!has(v.a, x) && has(v.b, x)) collisions.push_back(x);
  std::vector<std::pair<Integer, Integer>> pairs;
  Integer candidate = 1;
  for (const auto& x : collisions) {
    while (candidate <= n && (has(v.a, candidate) || has(v.b, candidate) || has(v.c, candidate)))
      ++candidate;
    if (candidate > n) return {pairs, false};
    pairs.emplace_back(x, candidate);
    ++candidate;
  }
  return {pairs, true};
}

}  // namespace

ExtensionWitness extension_witness(const ProductStructure& s, const ProductPointSet& c,
                                   const ProductPointSet& a, const ProductPointSet& b) {
  check_sets(c);
  auto all = pointers({&c, &a, &b});
  TailLayout layout = tail_layout(s, all, 0, 2 * all.size() + 2);
  ExtensionWitness out;
  std::vector<ProductElement::LevelMap> levels(layout.horizon);
  for (std::size_t i = 0; i < layout.horizon; ++i) {
    auto [pairs, ok] = collisions_to_fresh(level_values(s, c, a, b, i), s.n(i));
    if (!ok) out.unresolved_levels.push_back(i);
    for (const auto& [x, f] : pairs) {
      levels[i][x] = f;
      levels[i][f] = x;
    }
  }
  std::vector<ProductElement::TailMap> tail;
  if (layout.has_tail) {
    tail.resize(layout.period);
    for (std::size_t rho = 0; rho < layout.period; ++rho) {
      std::size_t i = layout.representative(rho);
      Integer n = s.n(i);
      auto [pairs, ok] = collisions_to_fresh(level_values(s, c, a, b, i), n);
      if (!ok) throw InternalError("no fresh values past the horizon");
      for (const auto& [x, f] : pairs) {
        std::optional<SymVal> sym;
        for (const ProductPoint* p : all)
          if (p->tail.at(i).concretize(n) == x) sym = p->tail.at(i);
        if (!sym) throw InternalError("collision value has no symbolic source");
        SymVal fresh = SymVal::constant(f.get_ui());
        tail[rho].emplace_back(*sym, fresh);
        tail[rho].emplace_back(fresh, *sym);
      }
    }
  }
  out.sigma = ProductElement(std::move(levels), std::move(tail));
  out.sigma.validate(s);
  if (!out.sigma.fixes(s, a)) throw InternalError("extension witness moves a point of A");
  out.moved = out.sigma.apply(s, c);
  out.verdict = mu_independent(s, out.moved, a, b);
  return out;
}

CounterexampleProfile counterexample_profile(std::size_t levels,
                                             const std::optional<std::vector<Integer>>& sizes) {
  CounterexampleProfile out;
  if (sizes) {
    if (levels > sizes->size())
      throw InputError("counterexample: more levels requested than sizes supplied");
    out.sizes = LevelSizes::table(*sizes);
    out.overridden = true;
  }
  for (std::size_t i = 0; i < levels; ++i) {
    CounterexampleRow row;
    row.level = i;
    if (out.overridden) {
      row.n = (*sizes)[i];
      row.x = make_rational(row.n - 1, row.n);
    } else {
      Integer two_pow;
      mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, i + 2);
      row.x = 1 - make_rational(1, two_pow);
      // Smallest n with (n - 1) / n >= x_i.
      Rational inv = 1 / (1 - row.x);
      Integer n;
      mpz_cdiv_q(n.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
      row.n = std::max(n, Integer(2));
      if (row.n != out.sizes.at_checked(i))
        throw InternalError("profile level size disagrees with its growth rule");
    }
    row.ratio = slice_ratio(row.n, 0, 1, 1, 1);
    if (row.n <= 8) {
      unsigned n = static_cast<unsigned>(row.n.get_ui());
      auto action = FiniteAction::symmetric(n);
      Point last = static_cast<Point>(n - 1);
      Point first = 0;
      Subgroup h1 = pointwise_stabilizer(action, std::span<const Point>(&last, 1));
      Subgroup h2 = pointwise_stabilizer(action, std::span<const Point>(&first, 1));
      ElementSet prod = product_set(h1, h2);
      Rational enumerated = make_rational(Integer(static_cast<unsigned long>(prod.size())),
                                          Integer(static_cast<unsigned long>(action->order())));
      if (enumerated != row.ratio)
        throw InternalError("product set ratio disagrees with the closed form at n = " + row.n.get_str());
      bool sends_first_to_last = false;
      for (const Perm& g : prod.elements())
        if (g(first) == last) sends_first_to_last = true;
      row.enumerated = true;
      row.product_size = prod.size();
      row.proper = !sends_first_to_last && prod.size() < action->order();
    } else {
      row.proper = row.ratio < 1;
    }
    if (row.n <= 5000) row.size_bound = factorial(row.n.get_ui() - 1) * (row.n - 1);
    out.running *= row.ratio;
    row.running = out.running;
    out.all_proper = out.all_proper && row.proper;
    out.rows.push_back(std::move(row));
  }
  out.exceeds_half = out.running > Rational(1, 2);
  out.a = ProductPoint{{}, TailSelector::first()};
  out.b = ProductPoint{{}, TailSelector::last()};
  ProductStructure s(out.sizes, std::max<std::size_t>(levels, ProductStructure::kDefaultReportDepth));
  out.mu = mu_independent(s, {out.a}, {}, {out.b});
  out.nm = nm_independent(s, {out.a}, {}, {out.b});
  return out;
}

std::vector<ProductPoint> residue_collision_points(const ProductStructure& s, const ProductPoint& c,
                                                   unsigned k) {
  if (k == 0) throw InputError("chain length must be at least 1");
  if (c.tail.is_none()) throw InputError("the rank witness needs a point with a tail");
  s.validate(c);
  std::size_t cp = c.tail.period();
  std::size_t m = std::lcm<std::size_t>(k, cp);
  std::vector<ProductPoint> out;
  for (unsigned j = 0; j < k; ++j) {
    std::vector<SymVal> cycle(m);
    for (std::size_t rho = 0; rho < m; ++rho) {
      const SymVal& v = c.tail.values()[rho % cp];
      if (rho % k == j)
        cycle[rho] = v;
      else
        cycle[rho] = v == SymVal::constant(1) ? SymVal::constant(2) : SymVal::constant(1);
    }
    out.push_back(ProductPoint{{}, TailSelector::cycle(std::move(cycle))});
  }
  return out;
}

DependenceChain mu_rank_infinite_witness(const ProductStructure& s, const ProductPointSet& c,
                                         unsigned k) {
  check_sets(c);
  DependenceChain out;
  out.c = c;
  out.parameters = residue_collision_points(s, c.front(), k);
  out.sets.emplace_back();
  for (unsigned j = 0; j < k; ++j) {
    ProductPointSet next = out.sets.back();
    next.push_back(out.parameters[j]);
    out.sets.push_back(std::move(next));
  }
  out.all_dependent = true;
  for (unsigned j = 0; j < k; ++j) {
    out.steps.push_back(mu_independent(s, c, out.sets[j], out.sets[j + 1]));
    out.all_dependent = out.all_dependent && out.steps.back().verdict == Verdict::kDependent;
  }
  return out;
}

}  // namespace muind
