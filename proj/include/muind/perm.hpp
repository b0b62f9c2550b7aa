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

#ifndef MUIND_PERM_HPP
#define MUIND_PERM_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "muind/rational.hpp"

namespace muind {

using Point = std::uint32_t;
using Tuple = std::vector<Point>;

// A permutation of {0, ..., degree-1} stored as its image array.
// Composition acts on the left: (a * b)(x) == a(b(x)).
class Perm {
 public:
  Perm() = default;
  // Validates that `images` is a bijection of {0, ..., images.size()-1}.
  explicit Perm(std::vector<Point> images);

  static Perm identity(std::size_t degree);
  // Cycle notation over point indices, e.g. {{0, 1, 2}, {3, 4}}.
  static Perm from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  const std::vector<Point>& images() const noexcept { return images_; }

  Perm operator*(const Perm& rhs) const;
  Perm inverse() const;
  bool is_identity() const noexcept;
  bool fixes(std::span<const Point> points) const noexcept;
  Tuple apply(std::span<const Point> tuple) const;

  bool operator==(const Perm&) const = default;
  auto operator<=>(const Perm&) const = default;

 private:
  std::vector<Point> images_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

// A faithful permutation group on a finite labelled point set, given by
// generators and fully enumerated at construction.
class FiniteAction {
 public:
  static constexpr std::uint64_t kDefaultCap = 10'000'000;

  // Throws InputError for malformed generators, CapacityError when the
  // closure exceeds `cap` elements.
  FiniteAction(std::vector<std::string> points, std::vector<Perm> generators,
               std::uint64_t cap = kDefaultCap);

  // S_n on the points "1", ..., "n".
  static std::shared_ptr<const FiniteAction> symmetric(unsigned n,
                                                       std::uint64_t cap = kDefaultCap);

  std::size_t degree() const noexcept { return points_.size(); }
  const std::vector<std::string>& points() const noexcept { return points_; }
  const std::vector<Perm>& generators() const noexcept { return generators_; }
  // Sorted.
  const std::vector<Perm>& elements() const noexcept { return *elements_; }
  std::shared_ptr<const std::vector<Perm>> shared_elements() const noexcept { return elements_; }
  std::uint64_t order() const noexcept { return elements_->size(); }
  std::uint64_t cap() const noexcept { return cap_; }

  Point point_index(std::string_view label) const;
  Tuple resolve(std::span<const std::string> labels) const;
  bool contains(const Perm& g) const;

  // Product of orbit lengths down the point-stabilizer chain; must agree with
  // order().
  Integer orbit_stabilizer_order() const;
  bool is_full_symmetric() const;

 private:
  std::vector<std::string> points_;
  std::unordered_map<std::string, Point> index_;
  std::vector<Perm> generators_;
  std::shared_ptr<const std::vector<Perm>> elements_;
  std::uint64_t cap_;
};

class Subgroup;

// An explicit subset of a parent group.
class ElementSet {
 public:
  // Validates membership in the parent.
  ElementSet(std::shared_ptr<const FiniteAction> parent, std::vector<Perm> elements);

  const std::shared_ptr<const FiniteAction>& parent() const noexcept { return parent_; }
  const std::vector<Perm>& elements() const noexcept { return *elements_; }
  std::size_t size() const noexcept { return elements_->size(); }
  bool empty() const noexcept { return elements_->empty(); }
  bool contains(const Perm& g) const;
  bool is_subset_of(const ElementSet& other) const;
  bool same_parent(const ElementSet& other) const noexcept { return parent_ == other.parent_; }
  bool is_subgroup() const noexcept { return closed_; }

  // Elementwise images under left / right multiplication and inversion.
  ElementSet left_translate(const Perm& g) const;
  ElementSet right_translate(const Perm& g) const;
  ElementSet inverted() const;

  bool operator==(const ElementSet& other) const;

 protected:
  struct Trusted {};
  ElementSet(Trusted, std::shared_ptr<const FiniteAction> parent,
             std::shared_ptr<const std::vector<Perm>> sorted_elements, bool closed);

  std::shared_ptr<const FiniteAction> parent_;
  std::shared_ptr<const std::vector<Perm>> elements_;
  bool closed_ = false;
};

// A subgroup of the parent group. Only constructible through operations that
// guarantee closure.
class Subgroup : public ElementSet {
 public:
  static Subgroup whole(std::shared_ptr<const FiniteAction> parent);
  static Subgroup trivial(std::shared_ptr<const FiniteAction> parent);
  // Closure of `generators` inside the parent; generators must be members.
  static Subgroup generated_by(std::shared_ptr<const FiniteAction> parent,
                               const std::vector<Perm>& generators);

  std::uint64_t order() const noexcept { return size(); }

 private:
  friend Subgroup pointwise_stabilizer(std::shared_ptr<const FiniteAction>, std::span<const Point>);
  friend Subgroup intersection(const Subgroup&, const Subgroup&);
  friend class ElementSet;
  Subgroup(std::shared_ptr<const FiniteAction> parent,
           std::shared_ptr<const std::vector<Perm>> sorted_elements);
};

// { g . tuple : g in subgroup }, sorted.
std::vector<Tuple> orbit(const ElementSet& group, std::span<const Point> tuple);
std::vector<std::vector<std::string>> orbit(const FiniteAction& action, const ElementSet& group,
                                            std::span<const std::string> tuple);

Subgroup pointwise_stabilizer(std::shared_ptr<const FiniteAction> action,
                              std::span<const Point> tuple);
Subgroup pointwise_stabilizer(std::shared_ptr<const FiniteAction> action,
                              std::span<const std::string> labels);

Subgroup intersection(const Subgroup& h1, const Subgroup& h2);

// { h1 h2 : h1 in H1, h2 in H2 }. When both arguments are subgroups the
// result size is cross-checked against |H1||H2| / |H1 n H2|.
ElementSet product_set(const ElementSet& h1, const ElementSet& h2);

// [h : k] for k a subgroup of h.
std::uint64_t index(const Subgroup& h, const Subgroup& k);

}  // namespace muind

#endif  // MUIND_PERM_HPP
