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

#ifndef MUIND_TREE_HPP
#define MUIND_TREE_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "muind/perm.hpp"
#include "muind/product.hpp"
#include "muind/rational.hpp"

namespace muind {

// alpha(i) = prefix[i] for i < prefix.size(), then cycle repeated.
class Arity {
 public:
  Arity(std::vector<unsigned> prefix, std::vector<unsigned> cycle);
  static Arity constant(unsigned k) { return Arity({}, {k}); }

  unsigned at(std::size_t level) const;
  const std::vector<unsigned>& prefix() const noexcept { return prefix_; }
  const std::vector<unsigned>& cycle() const noexcept { return cycle_; }
  std::optional<unsigned> constant_value() const;
  unsigned max_value() const;
  std::string describe() const;

 private:
  std::vector<unsigned> prefix_;
  std::vector<unsigned> cycle_;
};

// Child indices along the path from the root.
using Path = std::vector<unsigned>;

struct Vertex {
  std::size_t level = 0;
  std::uint64_t index = 0;  // mixed radix, first child index most significant
  bool operator==(const Vertex&) const = default;
  auto operator<=>(const Vertex&) const = default;
};

// T_alpha truncated at `depth`; levels 0 (root) .. depth.
class RootedTree {
 public:
  static constexpr std::uint64_t kMaxVertices = std::uint64_t{1} << 22;

  RootedTree(Arity arity, std::size_t depth);

  const Arity& arity() const noexcept { return arity_; }
  unsigned arity(std::size_t level) const { return arity_.at(level); }
  std::size_t depth() const noexcept { return depth_; }
  std::uint64_t level_size(std::size_t level) const;
  // Number of level-`to` descendants of one level-`from` vertex.
  std::uint64_t stride(std::size_t from, std::size_t to) const;

  Vertex vertex(const Path& path) const;
  Path path(const Vertex& v) const;
  Vertex ancestor(const Vertex& v, std::size_t level) const;
  bool is_below(const Vertex& w, const Vertex& v) const;  // w in T^v

  // Ids of the non-root vertices, level by level.
  std::uint64_t vertex_count() const noexcept { return offsets_.back(); }
  std::uint64_t id(const Vertex& v) const;
  Vertex from_id(std::uint64_t id) const;
  std::string label(const Vertex& v) const;

  // Ids of the internal vertices (levels 0 .. depth-1), level by level.
  std::uint64_t internal_count() const noexcept { return internal_offsets_.back(); }
  std::uint64_t internal_id(const Vertex& v) const;

 private:
  Arity arity_;
  std::size_t depth_;
  std::vector<std::uint64_t> sizes_;    // level sizes 0 .. depth
  std::vector<std::uint64_t> offsets_;  // id offset of levels 1 .. depth, plus total
  std::vector<std::uint64_t> internal_offsets_;
};

// A subgroup of the truncated automorphism group. Portrait subgroups of the
// full group keep, per internal vertex, the set of children its local
// permutation must fix; enumerated subgroups hold explicit permutations of
// the vertex ids.
class TreeSubgroup {
 public:
  enum class Rep { kPortrait, kEnumerated };

  static TreeSubgroup portrait(std::shared_ptr<const RootedTree> tree,
                               std::vector<std::uint64_t> fixed_masks);
  static TreeSubgroup enumerated(std::shared_ptr<const RootedTree> tree, Subgroup group);

  Rep rep() const noexcept { return rep_; }
  const RootedTree& tree() const noexcept { return *tree_; }
  const std::vector<std::uint64_t>& fixed_masks() const noexcept { return masks_; }
  const Subgroup& group() const;

  Integer order() const;
  // Orbit partition of the level-`level` vertices, restricted to T^below when
  // given. Each part is sorted; parts are ordered by their first index.
  std::vector<std::vector<std::uint64_t>> orbits(std::size_t level,
                                                 std::optional<Vertex> below = std::nullopt) const;
  std::vector<std::uint64_t> vertex_orbit(const Vertex& v) const;
  // Orbit of a tuple of vertices on one level.
  std::vector<std::vector<std::uint64_t>> tuple_orbit(std::size_t level,
                                                      const std::vector<std::uint64_t>& tuple) const;

  TreeSubgroup intersect(const TreeSubgroup& other) const;
  bool is_subgroup_of(const TreeSubgroup& other) const;

 private:
  friend class TruncatedTreeGroup;
  struct Swap {
    std::size_t level;
    std::uint64_t index;
    unsigned c1, c2;
  };
  std::vector<Swap> swaps(std::size_t below_level) const;
  std::uint64_t apply_swap(const Swap& s, std::size_t level, std::uint64_t w) const;

  std::shared_ptr<const RootedTree> tree_;
  Rep rep_ = Rep::kPortrait;
  std::vector<std::uint64_t> masks_;
  std::optional<Subgroup> group_;
};

// Self-similar generator: g(c w) = root[c] sections[c](w), "e" the identity.
struct RecursionGenerator {
  std::string name;
  std::vector<unsigned> root;
  std::vector<std::string> sections;
};

class TruncatedTreeGroup {
 public:
  static TruncatedTreeGroup full_automorphisms(Arity arity, std::size_t depth);
  static TruncatedTreeGroup from_recursion(unsigned arity, std::size_t depth,
                                           std::vector<RecursionGenerator> generators,
                                           std::uint64_t cap = FiniteAction::kDefaultCap);

  const RootedTree& tree() const noexcept { return *tree_; }
  const std::shared_ptr<const RootedTree>& tree_ptr() const noexcept { return tree_; }
  std::size_t depth() const noexcept { return tree_->depth(); }
  bool structural() const noexcept { return !action_; }
  const TreeSubgroup& whole() const noexcept { return whole_; }
  const std::vector<RecursionGenerator>& generators() const noexcept { return generators_; }

  // Pointwise stabilizer of the given vertices.
  TreeSubgroup stabilizer(const std::vector<Vertex>& vertices) const;
  TreeSubgroup rigid_stabilizer(const Vertex& v) const;
  TreeSubgroup rigid_level_stabilizer(std::size_t level) const;
  // Some g with g(v) = w and g rist(v) g^-1 = rist(w), checked on every vertex.
  bool conjugation_witness(const Vertex& v, const Vertex& w) const;

  // The same group truncated at another depth. Cached. A cap limit lowers the
  // enumeration cap for this call; a CapacityError is not cached.
  std::shared_ptr<const TruncatedTreeGroup> with_depth(std::size_t depth,
                                                       std::optional<std::uint64_t> cap_limit = std::nullopt) const;
  std::string describe() const;

 private:
  TruncatedTreeGroup() = default;
  void check_vertex(const Vertex& v) const;

  std::shared_ptr<const RootedTree> tree_;
  std::shared_ptr<const FiniteAction> action_;  // enumerated groups only
  std::vector<RecursionGenerator> generators_;
  std::uint64_t cap_ = FiniteAction::kDefaultCap;
  TreeSubgroup whole_ = TreeSubgroup::portrait(nullptr, {});
  struct Cache {
    std::mutex mu;
    std::map<std::size_t, std::shared_ptr<const TruncatedTreeGroup>> by_depth;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

struct BranchAxiomsReport {
  std::size_t depth = 0;
  std::vector<bool> transitive;      // levels 1 .. depth
  std::vector<Integer> rist_order;   // levels 0 .. depth
  std::vector<Integer> rist_index;   // |G : rist(n)|
  std::vector<bool> rist_product;    // |rist(n)| == prod_v |rist(v)|
  Integer order;
  bool all_transitive = true;
};
BranchAxiomsReport verify_branch_axioms(const TruncatedTreeGroup& g);

struct RistOrbits {
  Vertex v;
  std::size_t level = 0;
  std::vector<std::vector<std::uint64_t>> orbits;
  std::optional<std::size_t> previous_count;  // at level - 1, when below v
  bool stabilized = false;
};
RistOrbits rist_boundary_orbits(const TruncatedTreeGroup& g, const Vertex& v, std::size_t level);

// A ray of the boundary: explicit child indices then a tail rule.
struct BoundaryPoint {
  enum class Tail { kLeft, kRight, kCycle, kNone };
  Path path;
  Tail tail = Tail::kNone;
  std::vector<unsigned> cycle;  // position j reads cycle[j mod size]

  std::optional<unsigned> child(const Arity& arity, std::size_t position) const;
  // Throws UndecidableError past the explicit path of a none tail.
  Path prefix(const Arity& arity, std::size_t length) const;
  void validate(const Arity& arity) const;
  std::string to_string() const;
  bool operator==(const BoundaryPoint&) const = default;
};

// First level at which the two rays sit at different vertices; nullopt when
// they are the same ray.
std::optional<std::size_t> separation_level(const Arity& arity, const BoundaryPoint& x,
                                            const BoundaryPoint& y);
bool same_ray(const Arity& arity, const BoundaryPoint& x, const BoundaryPoint& y);

struct OmegaVertex {
  Vertex v;
  std::size_t orbit_count = 0;
};

struct SmallnessProfile {
  std::size_t level = 0;
  std::vector<std::vector<std::uint64_t>> orbits;  // G_f on level `level`
  std::vector<OmegaVertex> omega;
  std::size_t ray_vertices = 0;
  std::size_t predicted = 0;  // ray vertices + rist orbit counts over omega
  bool matches_prediction = false;
  bool within_prediction = false;
  std::vector<std::size_t> counts_by_level;  // levels 1 .. level
  bool linear_envelope = false;
};
SmallnessProfile smallness_profile(const TruncatedTreeGroup& g, const std::vector<BoundaryPoint>& f,
                                   std::size_t level);

struct BranchVerdict {
  Verdict mu = Verdict::kUnknown;
  Verdict nm = Verdict::kUnknown;
  bool acl_member = false;
  std::optional<std::size_t> separation;
  std::optional<std::size_t> open_witness;     // m with G_A n rist(m) inside G_AB G_Aa
  std::optional<std::size_t> orbit_open_from;  // cylinder level inside o(a/AB)
  Integer witness_index = 1;                   // [G_A : G_A n rist(m)]
  Rational measure_lower = 0;
  std::vector<Integer> index_sequence;         // [G_A : G_(A, a_j)] at levels 1 .. depth
  std::size_t working_depth = 0;
  std::string detail;
};
BranchVerdict branch_independence(const TruncatedTreeGroup& g, const std::vector<BoundaryPoint>& a,
                                  const std::vector<BoundaryPoint>& base,
                                  const std::vector<BoundaryPoint>& other);

struct BoundaryChecks {
  bool acl_member = false;
  BranchVerdict verdict;
  std::vector<Integer> stabilizer_indices;  // [G : G_f] approximated at levels 1 .. depth
  bool strictly_increasing = false;
};
BoundaryChecks boundary_mu_checks(const TruncatedTreeGroup& g, const BoundaryPoint& delta,
                                  const std::vector<BoundaryPoint>& f);

}  // namespace muind

#endif  // MUIND_TREE_HPP
