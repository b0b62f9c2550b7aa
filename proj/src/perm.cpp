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

#include "muind/perm.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_set>

#include "muind/errors.hpp"

namespace muind {

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x]) throw InputError("permutation is not a bijection");
    seen[x] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  Perm p;
  p.images_ = std::move(images);
  return p;
}

Perm Perm::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Point from = cycle[i];
      if (from >= degree) throw InputError("cycle entry out of range");
      if (used[from]) throw InputError("point repeated across cycles");
      used[from] = true;
      images[from] = cycle[(i + 1) % cycle.size()];
    }
  }
  return Perm(std::move(images));
}

Perm Perm::operator*(const Perm& rhs) const {
  if (rhs.degree() != degree()) throw InputError("degree mismatch in composition");
  Perm out;
  out.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) out.images_[x] = images_[rhs.images_[x]];
  return out;
}

Perm Perm::inverse() const {
  Perm out;
  out.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) out.images_[images_[x]] = static_cast<Point>(x);
  return out;
}

bool Perm::is_identity() const noexcept {
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != x) return false;
  return true;
}

bool Perm::fixes(std::span<const Point> points) const noexcept {
  return std::all_of(points.begin(), points.end(),
                     [&](Point x) { return x < images_.size() && images_[x] == x; });
}

Tuple Perm::apply(std::span<const Point> tuple) const {
  Tuple out;
  out.reserve(tuple.size());
  for (Point x : tuple) out.push_back(images_[x]);
  return out;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

namespace {

std::vector<Perm> close_under(const std::vector<Perm>& generators, std::size_t degree,
                              std::uint64_t cap) {
  std::unordered_set<Perm, PermHash> seen;
  std::deque<Perm> frontier;
  Perm id = Perm::identity(degree);
  seen.insert(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    Perm x = std::move(frontier.front());
    frontier.pop_front();
    for (const Perm& g : generators) {
      Perm y = g * x;
      if (seen.insert(y).second) {
        if (seen.size() > cap)
          throw CapacityError("group order exceeds enumeration cap of " + std::to_string(cap));
        frontier.push_back(std::move(y));
      }
    }
  }
  std::vector<Perm> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FiniteAction::FiniteAction(std::vector<std::string> points, std::vector<Perm> generators,
                           std::uint64_t cap)
    : points_(std::move(points)), generators_(std::move(generators)), cap_(cap) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!index_.emplace(points_[i], static_cast<Point>(i)).second)
      throw InputError("duplicate point identifier '" + points_[i] + "'");
  }
  for (const Perm& g : generators_) {
    if (g.degree() != points_.size())
      throw InputError("generator degree does not match the point set");
  }
  elements_ = std::make_shared<const std::vector<Perm>>(close_under(generators_, points_.size(), cap_));
}

std::shared_ptr<const FiniteAction> FiniteAction::symmetric(unsigned n, std::uint64_t cap) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, std::uint64_t>, std::shared_ptr<const FiniteAction>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, cap);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (n == 0) throw InputError("symmetric group needs at least one point");
  std::vector<std::string> labels;
  for (unsigned i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  std::vector<Perm> gens;
  if (n >= 2) {
    gens.push_back(Perm::from_cycles(n, {{0, 1}}));
    std::vector<Point> cycle(n);
    std::iota(cycle.begin(), cycle.end(), Point{0});
    if (n >= 3) gens.push_back(Perm::from_cycles(n, {cycle}));
  }
  auto action = std::make_shared<const FiniteAction>(std::move(labels), std::move(gens), cap);
  cache.emplace(key, action);
  return action;
}

Point FiniteAction::point_index(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) throw InputError("unknown point identifier '" + std::string(label) + "'");
  return it->second;
}

Tuple FiniteAction::resolve(std::span<const std::string> labels) const {
  Tuple out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(point_index(l));
  return out;
}

bool FiniteAction::contains(const Perm& g) const {
  return std::binary_search(elements_->begin(), elements_->end(), g);
}

Integer FiniteAction::orbit_stabilizer_order() const {
  Integer total = 1;
  std::vector<Perm> current = *elements_;
  for (Point x = 0; x < degree() && current.size() > 1; ++x) {
    std::vector<bool> hit(degree(), false);
    std::size_t orbit_size = 0;
    std::vector<Perm> stabilizer;
    for (const Perm& g : current) {
      if (!hit[g(x)]) {
        hit[g(x)] = true;
        ++orbit_size;
      }
      if (g(x) == x) stabilizer.push_back(g);
    }
    total *= static_cast<unsigned long>(orbit_size);
    current = std::move(stabilizer);
  }
  return total;
}

bool FiniteAction::is_full_symmetric() const { return Integer(order()) == factorial(degree()); }

ElementSet::ElementSet(std::shared_ptr<const FiniteAction> parent, std::vector<Perm> elements)
    : parent_(std::move(parent)) {
  if (!parent_) throw InputError("element set needs a parent group");
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  for (const Perm& g : elements) {
    if (!parent_->contains(g)) throw InputError("element is not a member of the parent group");
  }
  elements_ = std::make_shared<const std::vector<Perm>>(std::move(elements));
}

ElementSet::ElementSet(Trusted, std::shared_ptr<const FiniteAction> parent,
                       std::shared_ptr<const std::vector<Perm>> sorted_elements, bool closed)
    : parent_(std::move(parent)), elements_(std::move(sorted_elements)), closed_(closed) {}

bool ElementSet::contains(const Perm& g) const {
  return std::binary_search(elements_->begin(), elements_->end(), g);
}

bool ElementSet::is_subset_of(const ElementSet& other) const {
  return same_parent(other) &&
         std::includes(other.elements().begin(), other.elements().end(), elements().begin(),
                       elements().end());
}

ElementSet ElementSet::left_translate(const Perm& g) const {
  if (!parent_->contains(g)) throw InputError("translation by a non-member");
  std::vector<Perm> out;
  out.reserve(size());
  for (const Perm& x : elements()) out.push_back(g * x);
  std::sort(out.begin(), out.end());
  return ElementSet(Trusted{}, parent_, std::make_shared<const std::vector<Perm>>(std::move(out)),
                    false);
}

ElementSet ElementSet::right_translate(const Perm& g) const {
  if (!parent_->contains(g)) throw InputError("translation by a non-member");
  std::vector<Perm> out;
  out.reserve(size());
  for (const Perm& x : elements()) out.push_back(x * g);
  std::sort(out.begin(), out.end());
  return ElementSet(Trusted{}, parent_, std::make_shared<const std::vector<Perm>>(std::move(out)),
                    false);
}

ElementSet ElementSet::inverted() const {
  std::vector<Perm> out;
  out.reserve(size());
  for (const Perm& x : elements()) out.push_back(x.inverse());
  std::sort(out.begin(), out.end());
  return ElementSet(Trusted{}, parent_, std::make_shared<const std::vector<Perm>>(std::move(out)),
                    closed_);
}

bool ElementSet::operator==(const ElementSet& other) const {
  return same_parent(other) && elements() == other.elements();
}

Subgroup::Subgroup(std::shared_ptr<const FiniteAction> parent,
                   std::shared_ptr<const std::vector<Perm>> sorted_elements)
    : ElementSet(Trusted{}, std::move(parent), std::move(sorted_elements), true) {}

Subgroup Subgroup::whole(std::shared_ptr<const FiniteAction> parent) {
  auto elems = parent->shared_elements();
  return Subgroup(std::move(parent), std::move(elems));
}

Subgroup Subgroup::trivial(std::shared_ptr<const FiniteAction> parent) {
  auto elems = std::make_shared<const std::vector<Perm>>(
      std::vector<Perm>{Perm::identity(parent->degree())});
  return Subgroup(std::move(parent), std::move(elems));
}

Subgroup Subgroup::generated_by(std::shared_ptr<const FiniteAction> parent,
                                const std::vector<Perm>& generators) {
  for (const Perm& g : generators) {
    if (!parent->contains(g)) throw InputError("generator is not a member of the parent group");
  }
  auto elems = std::make_shared<const std::vector<Perm>>(
      close_under(generators, parent->degree(), parent->cap()));
  return Subgroup(std::move(parent), std::move(elems));
}

std::vector<Tuple> orbit(const ElementSet& group, std::span<const Point> tuple) {
  const auto degree = group.parent()->degree();
  for (Point x : tuple) {
    if (x >= degree) throw InputError("tuple entry is not a point of the action");
  }
  std::vector<Tuple> out;
  out.reserve(group.size());
  for (const Perm& g : group.elements()) out.push_back(g.apply(tuple));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::vector<std::string>> orbit(const FiniteAction& action, const ElementSet& group,
                                            std::span<const std::string> tuple) {
  Tuple t = action.resolve(tuple);
  std::vector<std::vector<std::string>> out;
  for (const Tuple& image : orbit(group, t)) {
    std::vector<std::string> labels;
    for (Point x : image) labels.push_back(action.points()[x]);
    out.push_back(std::move(labels));
  }
  return out;
}

Subgroup pointwise_stabilizer(std::shared_ptr<const FiniteAction> action,
                              std::span<const Point> tuple) {
  for (Point x : tuple) {
    if (x >= action->degree()) throw InputError("tuple entry is not a point of the action");
  }
  std::vector<Perm> kept;
  for (const Perm& g : action->elements()) {
    if (g.fixes(tuple)) kept.push_back(g);
  }
  return Subgroup(std::move(action), std::make_shared<const std::vector<Perm>>(std::move(kept)));
}

Subgroup pointwise_stabilizer(std::shared_ptr<const FiniteAction> action,
                              std::span<const std::string> labels) {
  Tuple t = action->resolve(labels);
  return pointwise_stabilizer(std::move(action), t);
}

Subgroup intersection(const Subgroup& h1, const Subgroup& h2) {
  if (!h1.same_parent(h2)) throw InputError("subgroups have different parents");
  std::vector<Perm> common;
  std::set_intersection(h1.elements().begin(), h1.elements().end(), h2.elements().begin(),
                        h2.elements().end(), std::back_inserter(common));
  return Subgroup(h1.parent(), std::make_shared<const std::vector<Perm>>(std::move(common)));
}

namespace {

// Union of the cosets x H over x in `left`, skipping x already covered.
std::vector<Perm> union_of_left_cosets(const ElementSet& left, const ElementSet& subgroup) {
  std::unordered_set<Perm, PermHash> seen;
  seen.reserve(left.size() + subgroup.size());
  for (const Perm& x : left.elements()) {
    if (seen.count(x)) continue;
    for (const Perm& h : subgroup.elements()) seen.insert(x * h);
  }
  std::vector<Perm> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ElementSet product_set(const ElementSet& h1, const ElementSet& h2) {
  if (!h1.same_parent(h2)) throw InputError("product of sets with different parents");
  std::vector<Perm> out;
  if (h2.is_subgroup()) {
    out = union_of_left_cosets(h1, h2);
  } else if (h1.is_subgroup()) {
    // H1 H2 = (H2^-1 H1)^-1
    std::vector<Perm> rev = union_of_left_cosets(h2.inverted(), h1);
    for (Perm& g : rev) g = g.inverse();
    std::sort(rev.begin(), rev.end());
    out = std::move(rev);
  } else {
    std::unordered_set<Perm, PermHash> seen;
    for (const Perm& a : h1.elements())
      for (const Perm& b : h2.elements()) seen.insert(a * b);
    out.assign(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
  }
  if (h1.is_subgroup() && h2.is_subgroup()) {
    std::size_t common = 0;
    auto a = h1.elements().begin(), b = h2.elements().begin();
    while (a != h1.elements().end() && b != h2.elements().end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        ++common, ++a, ++b;
      }
    }
    Integer lhs = Integer(static_cast<unsigned long>(out.size())) * static_cast<unsigned long>(common);
    Integer rhs = Integer(static_cast<unsigned long>(h1.size())) * static_cast<unsigned long>(h2.size());
    if (lhs != rhs) throw InternalError("product set size disagrees with |H1||H2|/|H1 n H2|");
  }
  return ElementSet(h1.parent(), std::move(out));
}

std::uint64_t index(const Subgroup& h, const Subgroup& k) {
  if (!k.is_subset_of(h)) throw InputError("index: second subgroup is not contained in the first");
  return h.size() / k.size();
}

}  // namespace muind
