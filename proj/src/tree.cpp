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

#include "muind/tree.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "muind/errors.hpp"

namespace muind {

Arity::Arity(std::vector<unsigned> prefix, std::vector<unsigned> cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (cycle_.empty()) throw InputError("arity needs a repeating part");
  for (unsigned a : prefix_)
    if (a < 2 || a > 64) throw InputError("arity values must lie in [2, 64]");
  for (unsigned a : cycle_)
    if (a < 2 || a > 64) throw InputError("arity values must lie in [2, 64]");
}

unsigned Arity::at(std::size_t level) const {
  if (level < prefix_.size()) return prefix_[level];
  return cycle_[(level - prefix_.size()) % cycle_.size()];
}

std::optional<unsigned> Arity::constant_value() const {
  unsigned v = cycle_[0];
  for (unsigned a : prefix_)
    if (a != v) return std::nullopt;
  for (unsigned a : cycle_)
    if (a != v) return std::nullopt;
  return v;
}

unsigned Arity::max_value() const {
  unsigned m = *std::max_element(cycle_.begin(), cycle_.end());
  for (unsigned a : prefix_) m = std::max(m, a);
  return m;
}

std::string Arity::describe() const {
  auto join = [](const std::vector<unsigned>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
    return out;
  };
  if (auto c = constant_value()) return std::to_string(*c);
  std::string out = prefix_.empty() ? "" : "[" + join(prefix_) + "] then ";
  return out + "(" + join(cycle_) + ") repeated";
}

RootedTree::RootedTree(Arity arity, std::size_t depth) : arity_(std::move(arity)), depth_(depth) {
  sizes_.push_back(1);
  offsets_.push_back(0);
  internal_offsets_.push_back(0);
  for (std::size_t l = 0; l < depth_; ++l) {
    std::uint64_t next = sizes_.back() * arity_.at(l);
    if (next > kMaxVertices || offsets_.back() + next > kMaxVertices)
      throw CapacityError("tree truncation has too many vertices");
    internal_offsets_.push_back(internal_offsets_.back() + sizes_.back());
    sizes_.push_back(next);
    offsets_.push_back(offsets_.back() + next);
  }
}

std::uint64_t RootedTree::level_size(std::size_t level) const {
  if (level > depth_) throw InputError("level " + std::to_string(level) + " beyond the truncation depth");
  return sizes_[level];
}

std::uint64_t RootedTree::stride(std::size_t from, std::size_t to) const {
  return level_size(to) / level_size(from);
}

Vertex RootedTree::vertex(const Path& path) const {
  if (path.size() > depth_) throw InputError("vertex lies beyond the truncation depth");
  Vertex v{path.size(), 0};
  for (std::size_t j = 0; j < path.size(); ++j) {
    if (path[j] >= arity_.at(j)) throw InputError("child index out of range at level " + std::to_string(j));
    v.index = v.index * arity_.at(j) + path[j];
  }
  return v;
}

Path RootedTree::path(const Vertex& v) const {
  Path out(v.level);
  std::uint64_t idx = v.index;
  for (std::size_t j = v.level; j-- > 0;) {
    out[j] = static_cast<unsigned>(idx % arity_.at(j));
    idx /= arity_.at(j);
  }
  return out;
}

Vertex RootedTree::ancestor(const Vertex& v, std::size_t level) const {
  if (level > v.level) throw InputError("ancestor level below the vertex");
  return Vertex{level, v.index / stride(level, v.level)};
}

bool RootedTree::is_below(const Vertex& w, const Vertex& v) const {
  return w.level >= v.level && ancestor(w, v.level) == v;
}

std::uint64_t RootedTree::id(const Vertex& v) const {
  if (v.level == 0 || v.level > depth_) throw InputError("vertex has no id");
  return offsets_[v.level - 1] + v.index;
}

Vertex RootedTree::from_id(std::uint64_t id) const {
  for (std::size_t l = 1; l <= depth_; ++l)
    if (id < offsets_[l]) return Vertex{l, id - offsets_[l - 1]};
  throw InputError("vertex id out of range");
}

std::uint64_t RootedTree::internal_id(const Vertex& v) const {
  if (v.level >= depth_) throw InputError("vertex is a leaf of the truncation");
  return internal_offsets_[v.level] + v.index;
}

std::string RootedTree::label(const Vertex& v) const {
  if (v.level == 0) return "root";
  std::string out;
  Path p = path(v);
  for (std::size_t j = 0; j < p.size(); ++j) out += (j ? "." : "") + std::to_string(p[j]);
  return out;
}

namespace {

std::uint64_t full_mask(unsigned k) { return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1; }

unsigned free_count(std::uint64_t mask, unsigned k) {
  return k - static_cast<unsigned>(__builtin_popcountll(mask & full_mask(k)));
}

struct UnionFind {
  std::vector<std::uint64_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::uint64_t find(std::uint64_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint64_t a, std::uint64_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

TreeSubgroup TreeSubgroup::portrait(std::shared_ptr<const RootedTree> tree,
                                    std::vector<std::uint64_t> fixed_masks) {
  TreeSubgroup g;
  g.rep_ = Rep::kPortrait;
  g.tree_ = std::move(tree);
  if (g.tree_) {
    if (fixed_masks.size() != g.tree_->internal_count())
      throw InternalError("portrait mask count does not match the tree");
    for (std::size_t l = 0; l < g.tree_->depth(); ++l) {
      unsigned k = g.tree_->arity(l);
      for (std::uint64_t x = 0; x < g.tree_->level_size(l); ++x) {
        auto& m = fixed_masks[g.tree_->internal_id({l, x})];
        m &= full_mask(k);
        if (free_count(m, k) <= 1) m = full_mask(k);
      }
    }
  }
  g.masks_ = std::move(fixed_masks);
  return g;
}

TreeSubgroup TreeSubgroup::enumerated(std::shared_ptr<const RootedTree> tree, Subgroup group) {
  TreeSubgroup g;
  g.rep_ = Rep::kEnumerated;
  g.tree_ = std::move(tree);
  g.group_.emplace(std::move(group));
  return g;
}

const Subgroup& TreeSubgroup::group() const {
  if (!group_) throw InternalError("portrait subgroup has no explicit elements");
  return *group_;
}

Integer TreeSubgroup::order() const {
  if (rep_ == Rep::kEnumerated) return Integer(static_cast<unsigned long>(group_->order()));
  Integer out = 1;
  for (std::size_t l = 0; l < tree_->depth(); ++l) {
    unsigned k = tree_->arity(l);
    for (std::uint64_t x = 0; x < tree_->level_size(l); ++x)
      out *= factorial(free_count(masks_[tree_->internal_id({l, x})], k));
  }
  return out;
}

std::vector<TreeSubgroup::Swap> TreeSubgroup::swaps(std::size_t below_level) const {
  std::vector<Swap> out;
  for (std::size_t l = 0; l < below_level && l < tree_->depth(); ++l) {
    unsigned k = tree_->arity(l);
    for (std::uint64_t x = 0; x < tree_->level_size(l); ++x) {
      std::uint64_t m = masks_[tree_->internal_id({l, x})];
      std::vector<unsigned> free;
      for (unsigned c = 0; c < k; ++c)
        if (!((m >> c) & 1)) free.push_back(c);
      for (std::size_t j = 1; j < free.size(); ++j) out.push_back(Swap{l, x, free[0], free[j]});
    }
  }
  return out;
}

std::uint64_t TreeSubgroup::apply_swap(const Swap& s, std::size_t level, std::uint64_t w) const {
  unsigned k = tree_->arity(s.level);
  std::uint64_t st = tree_->stride(s.level + 1, level);
  std::uint64_t anc = w / st, rem = w % st;
  if (anc / k != s.index) return w;
  unsigned child = static_cast<unsigned>(anc % k);
  if (child == s.c1)
    child = s.c2;
  else if (child == s.c2)
    child = s.c1;
  else
    return w;
  return (s.index * k + child) * st + rem;
}

std::vector<std::vector<std::uint64_t>> TreeSubgroup::orbits(std::size_t level,
                                                             std::optional<Vertex> below) const {
  std::uint64_t lo = 0, count = tree_->level_size(level);
  if (below) {
    if (below->level > level) throw InputError("orbit level lies above the subtree root");
    count = tree_->stride(below->level, level);
    lo = below->index * count;
  }
  UnionFind uf(count);
  if (level > 0) {
    if (rep_ == Rep::kPortrait) {
      for (const Swap& s : swaps(level))
        for (std::uint64_t w = lo; w < lo + count; ++w) {
          std::uint64_t img = apply_swap(s, level, w);
          if (img >= lo && img < lo + count) uf.unite(w - lo, img - lo);
        }
    } else {
      std::uint64_t base = tree_->id({level, 0});
      for (const Perm& g : group_->elements())
        for (std::uint64_t w = lo; w < lo + count; ++w) {
          std::uint64_t img = g(static_cast<Point>(base + w)) - base;
          if (img >= lo && img < lo + count) uf.unite(w - lo, img - lo);
        }
    }
  }
  std::map<std::uint64_t, std::vector<std::uint64_t>> parts;
  for (std::uint64_t w = 0; w < count; ++w) parts[uf.find(w)].push_back(lo + w);
  std::vector<std::vector<std::uint64_t>> out;
  for (auto& [root, part] : parts) out.push_back(std::move(part));
  return out;
}

std::vector<std::uint64_t> TreeSubgroup::vertex_orbit(const Vertex& v) const {
  for (auto& part : orbits(v.level))
    if (std::binary_search(part.begin(), part.end(), v.index)) return part;
  throw InternalError("vertex missing from its level partition");
}

std::vector<std::vector<std::uint64_t>> TreeSubgroup::tuple_orbit(
    std::size_t level, const std::vector<std::uint64_t>& tuple) const {
  std::set<std::vector<std::uint64_t>> seen;
  if (rep_ == Rep::kEnumerated) {
    std::uint64_t base = level == 0 ? 0 : tree_->id({level, 0});
    for (const Perm& g : group_->elements()) {
      std::vector<std::uint64_t> img(tuple.size());
      for (std::size_t j = 0; j < tuple.size(); ++j)
        img[j] = level == 0 ? tuple[j] : g(static_cast<Point>(base + tuple[j])) - base;
      seen.insert(std::move(img));
    }
    return {seen.begin(), seen.end()};
  }
  auto gens = swaps(level);
  std::deque<std::vector<std::uint64_t>> queue{tuple};
  seen.insert(tuple);
  while (!queue.empty()) {
    auto cur = std::move(queue.front());
    queue.pop_front();
    for (const Swap& s : gens) {
      auto img = cur;
      for (auto& w : img) w = apply_swap(s, level, w);
      if (seen.insert(img).second) queue.push_back(std::move(img));
    }
  }
  return {seen.begin(), seen.end()};
}

TreeSubgroup TreeSubgroup::intersect(const TreeSubgroup& other) const {
  if (rep_ != other.rep_ || tree_ != other.tree_)
    throw InputError("subgroups of different groups cannot be intersected");
  if (rep_ == Rep::kEnumerated) return enumerated(tree_, intersection(*group_, *other.group_));
  std::vector<std::uint64_t> masks(masks_.size());
  for (std::size_t i = 0; i < masks.size(); ++i) masks[i] = masks_[i] | other.masks_[i];
  return portrait(tree_, std::move(masks));
}

bool TreeSubgroup::is_subgroup_of(const TreeSubgroup& other) const {
  if (rep_ != other.rep_ || tree_ != other.tree_) throw InputError("subgroups of different groups");
  if (rep_ == Rep::kEnumerated) return group_->is_subset_of(*other.group_);
  for (std::size_t i = 0; i < masks_.size(); ++i)
    if ((masks_[i] & other.masks_[i]) != other.masks_[i]) return false;
  return true;
}

TruncatedTreeGroup TruncatedTreeGroup::full_automorphisms(Arity arity, std::size_t depth) {
  TruncatedTreeGroup g;
  g.tree_ = std::make_shared<const RootedTree>(std::move(arity), depth);
  g.whole_ = TreeSubgroup::portrait(g.tree_, std::vector<std::uint64_t>(g.tree_->internal_count(), 0));
  return g;
}

TruncatedTreeGroup TruncatedTreeGroup::from_recursion(unsigned arity, std::size_t depth,
                                                      std::vector<RecursionGenerator> generators,
                                                      std::uint64_t cap) {
  if (depth == 0) throw InputError("recursion groups need depth >= 1");
  if (generators.empty()) throw InputError("recursion groups need at least one generator");
  std::map<std::string, const RecursionGenerator*> by_name;
  for (const auto& gen : generators) {
    if (gen.name == "e" || gen.name.empty()) throw InputError("generator name '" + gen.name + "' is reserved");
    if (!by_name.emplace(gen.name, &gen).second) throw InputError("generator '" + gen.name + "' defined twice");
    if (gen.root.size() != arity || gen.sections.size() != arity)
      throw InputError("generator '" + gen.name + "' must give " + std::to_string(arity) +
                       " root images and sections");
    std::vector<bool> hit(arity, false);
    for (unsigned c : gen.root) {
      if (c >= arity || hit[c]) throw InputError("root action of '" + gen.name + "' is not a permutation");
      hit[c] = true;
    }
  }
  for (const auto& gen : generators)
    for (const auto& s : gen.sections)
      if (s != "e" && !by_name.count(s))
        throw InputError("generator '" + gen.name + "' has unknown section '" + s + "'");

  TruncatedTreeGroup g;
  g.tree_ = std::make_shared<const RootedTree>(Arity::constant(arity), depth);
  g.generators_ = generators;
  g.cap_ = cap;
  const RootedTree& t = *g.tree_;
  std::vector<std::string> labels;
  for (std::uint64_t id = 0; id < t.vertex_count(); ++id) labels.push_back(t.label(t.from_id(id)));
  std::vector<Perm> perms;
  for (const auto& gen : generators) {
    std::vector<Point> images(t.vertex_count());
    for (std::uint64_t id = 0; id < t.vertex_count(); ++id) {
      Path p = t.path(t.from_id(id));
      const RecursionGenerator* cur = &gen;
      for (std::size_t j = 0; j < p.size() && cur; ++j) {
        unsigned c = p[j];
        p[j] = cur->root[c];
        const std::string& next = cur->sections[c];
        cur = next == "e" ? nullptr : by_name.at(next);
      }
      images[id] = static_cast<Point>(t.id(t.vertex(p)));
    }
    perms.emplace_back(std::move(images));
  }
  g.action_ = std::make_shared<const FiniteAction>(std::move(labels), std::move(perms), cap);
  g.whole_ = TreeSubgroup::enumerated(g.tree_, Subgroup::whole(g.action_));
  return g;
}

void TruncatedTreeGroup::check_vertex(const Vertex& v) const {
  if (v.level > depth()) throw InputError("vertex beyond the truncation depth");
  if (v.index >= tree_->level_size(v.level)) throw InputError("vertex index out of range");
}

TreeSubgroup TruncatedTreeGroup::stabilizer(const std::vector<Vertex>& vertices) const {
  for (const auto& v : vertices) check_vertex(v);
  if (!structural()) {
    Tuple ids;
    for (const auto& v : vertices)
      if (v.level > 0) ids.push_back(static_cast<Point>(tree_->id(v)));
    return TreeSubgroup::enumerated(tree_, pointwise_stabilizer(action_, ids));
  }
  std::vector<std::uint64_t> masks = whole_.fixed_masks();
  for (const auto& v : vertices) {
    Path p = tree_->path(v);
    Vertex u{0, 0};
    for (std::size_t j = 0; j < p.size(); ++j) {
      masks[tree_->internal_id(u)] |= std::uint64_t{1} << p[j];
      u = Vertex{j + 1, u.index * tree_->arity(j) + p[j]};
    }
  }
  return TreeSubgroup::portrait(tree_, std::move(masks));
}

TreeSubgroup TruncatedTreeGroup::rigid_stabilizer(const Vertex& v) const {
  check_vertex(v);
  if (!structural()) {
    Tuple outside;
    for (std::uint64_t id = 0; id < tree_->vertex_count(); ++id)
      if (!tree_->is_below(tree_->from_id(id), v)) outside.push_back(static_cast<Point>(id));
    return TreeSubgroup::enumerated(tree_, pointwise_stabilizer(action_, outside));
  }
  std::vector<std::uint64_t> masks(tree_->internal_count(), ~std::uint64_t{0});
  for (std::size_t l = v.level; l < depth(); ++l) {
    std::uint64_t st = tree_->stride(v.level, l);
    for (std::uint64_t x = v.index * st; x < (v.index + 1) * st; ++x) masks[tree_->internal_id({l, x})] = 0;
  }
  return TreeSubgroup::portrait(tree_, std::move(masks));
}

TreeSubgroup TruncatedTreeGroup::rigid_level_stabilizer(std::size_t level) const {
  if (level > depth()) throw InputError("level beyond the truncation depth");
  if (!structural()) {
    std::vector<Perm> gens;
    for (std::uint64_t x = 0; x < tree_->level_size(level); ++x) {
      TreeSubgroup r = rigid_stabilizer({level, x});
      const auto& elems = r.group().elements();
      gens.insert(gens.end(), elems.begin(), elems.end());
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return TreeSubgroup::enumerated(tree_, Subgroup::generated_by(action_, gens));
  }
  std::vector<std::uint64_t> masks(tree_->internal_count(), 0);
  for (std::size_t l = 0; l < level && l < depth(); ++l)
    for (std::uint64_t x = 0; x < tree_->level_size(l); ++x) masks[tree_->internal_id({l, x})] = ~std::uint64_t{0};
  return TreeSubgroup::portrait(tree_, std::move(masks));
}

namespace {

// Vertex-id permutation of the portrait element whose only non-trivial local
// permutations swap v's and w's children along the path to v.
std::vector<std::uint64_t> path_transport(const RootedTree& t, const Vertex& v, const Vertex& w) {
  Path pv = t.path(v), pw = t.path(w);
  std::vector<std::uint64_t> images(t.vertex_count());
  for (std::uint64_t id = 0; id < t.vertex_count(); ++id) {
    Path p = t.path(t.from_id(id));
    Path out = p;
    bool on_path = true;
    for (std::size_t j = 0; j < p.size() && j < pv.size() && on_path; ++j) {
      // Source vertex of position j is p[0..j); it lies on v's path iff on_path.
      if (p[j] == pv[j]) out[j] = pw[j];
      else if (p[j] == pw[j]) out[j] = pv[j];
      on_path = p[j] == pv[j];
    }
    images[id] = t.id(t.vertex(out));
  }
  return images;
}

}  // namespace

bool TruncatedTreeGroup::conjugation_witness(const Vertex& v, const Vertex& w) const {
  check_vertex(v);
  check_vertex(w);
  if (v.level != w.level) return false;
  if (v.level == 0) return true;
  const RootedTree& t = *tree_;
  if (!structural()) {
    Point sv = static_cast<Point>(t.id(v)), sw = static_cast<Point>(t.id(w));
    const Perm* g = nullptr;
    for (const Perm& x : whole_.group().elements())
      if (x(sv) == sw) {
        g = &x;
        break;
      }
    if (!g) return false;
    Perm gi = g->inverse();
    Subgroup rv = rigid_stabilizer(v).group(), rw = rigid_stabilizer(w).group();
    if (rv.order() != rw.order()) return false;
    for (const Perm& h : rv.elements())
      if (!rw.contains(*g * h * gi)) return false;
    return true;
  }
  std::vector<std::uint64_t> g = path_transport(t, v, w);
  std::vector<std::uint64_t> gi(g.size());
  for (std::uint64_t x = 0; x < g.size(); ++x) gi[g[x]] = x;
  if (t.from_id(g[t.id(v)]) != w) return false;
  TreeSubgroup rv = rigid_stabilizer(v), rw = rigid_stabilizer(w);
  if (rv.order() != rw.order()) return false;
  // Each generator of rist(v), conjugated, must fix every vertex outside T^w.
  for (const auto& s : rv.swaps(depth())) {
    for (std::uint64_t id = 0; id < t.vertex_count(); ++id) {
      Vertex x = t.from_id(id);
      if (t.is_below(x, w)) continue;
      Vertex y = t.from_id(gi[id]);
      Vertex sy{y.level, y.level > s.level ? rv.apply_swap(s, y.level, y.index) : y.index};
      if (g[t.id(sy)] != id) return false;
    }
  }
  return true;
}

std::shared_ptr<const TruncatedTreeGroup> TruncatedTreeGroup::with_depth(std::size_t d,
                                                                     std::optional<std::uint64_t> cap_limit) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto it = cache_->by_depth.find(d);
  if (it != cache_->by_depth.end()) return it->second;
  std::shared_ptr<const TruncatedTreeGroup> out;
  if (structural())
    out = std::make_shared<const TruncatedTreeGroup>(full_automorphisms(tree_->arity(), d));
  else
    out = std::make_shared<const TruncatedTreeGroup>(
        from_recursion(*tree_->arity().constant_value(), d, generators_,
                       cap_limit ? std::min(cap_, *cap_limit) : cap_));
  cache_->by_depth.emplace(d, out);
  return out;
}

std::string TruncatedTreeGroup::describe() const {
  if (structural())
    return "full automorphism group, arity " + tree_->arity().describe() + ", depth " +
           std::to_string(depth());
  std::string names;
  for (const auto& g : generators_) names += (names.empty() ? "" : ",") + g.name;
  return "group generated by " + names + ", arity " + tree_->arity().describe() + ", depth " +
         std::to_string(depth());
}

BranchAxiomsReport verify_branch_axioms(const TruncatedTreeGroup& g) {
  BranchAxiomsReport out;
  out.depth = g.depth();
  out.order = g.whole().order();
  for (std::size_t l = 1; l <= g.depth(); ++l) {
    bool t = g.whole().orbits(l).size() == 1;
    out.transitive.push_back(t);
    out.all_transitive = out.all_transitive && t;
  }
  for (std::size_t n = 0; n <= g.depth(); ++n) {
    Integer order = g.rigid_level_stabilizer(n).order();
    Integer product = 1;
    for (std::uint64_t x = 0; x < g.tree().level_size(n); ++x) product *= g.rigid_stabilizer({n, x}).order();
    out.rist_order.push_back(order);
    out.rist_index.push_back(out.order / order);
    out.rist_product.push_back(order == product);
  }
  return out;
}

RistOrbits rist_boundary_orbits(const TruncatedTreeGroup& g, const Vertex& v, std::size_t level) {
  if (v.level >= level || level > g.depth())
    throw InputError("orbit level must lie strictly below the vertex and within the truncation");
  RistOrbits out;
  out.v = v;
  out.level = level;
  TreeSubgroup r = g.rigid_stabilizer(v);
  out.orbits = r.orbits(level, v);
  if (level - 1 > v.level) {
    out.previous_count = r.orbits(level - 1, v).size();
    out.stabilized = *out.previous_count == out.orbits.size();
  }
  return out;
}

std::optional<unsigned> BoundaryPoint::child(const Arity& arity, std::size_t position) const {
  if (position < path.size()) return path[position];
  switch (tail) {
    case Tail::kLeft: return 0u;
    case Tail::kRight: return arity.at(position) - 1;
    case Tail::kCycle: return cycle[position % cycle.size()];
    case Tail::kNone: return std::nullopt;
  }
  return std::nullopt;
}

Path BoundaryPoint::prefix(const Arity& arity, std::size_t length) const {
  Path out;
  for (std::size_t j = 0; j < length; ++j) {
    auto c = child(arity, j);
    if (!c) throw UndecidableError("ray " + to_string() + " is not specified to depth " + std::to_string(length));
    out.push_back(*c);
  }
  return out;
}

void BoundaryPoint::validate(const Arity& arity) const {
  if (tail == Tail::kCycle && cycle.empty()) throw InputError("ray cycle must not be empty");
  for (std::size_t j = 0; j < path.size(); ++j)
    if (path[j] >= arity.at(j)) throw InputError("ray " + to_string() + " leaves the tree at level " + std::to_string(j));
  if (tail != Tail::kCycle) return;
  std::size_t end = std::max(path.size(), arity.prefix().size()) + std::lcm(cycle.size(), arity.cycle().size());
  for (std::size_t j = path.size(); j < end; ++j)
    if (*child(arity, j) >= arity.at(j)) throw InputError("ray " + to_string() + " cycle exceeds the arity");
}

std::string BoundaryPoint::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < path.size(); ++j) out += (j ? "." : "") + std::to_string(path[j]);
  std::string t;
  switch (tail) {
    case Tail::kLeft: t = "left"; break;
    case Tail::kRight: t = "right"; break;
    case Tail::kNone: t = "none"; break;
    case Tail::kCycle:
      t = "cycle(";
      for (std::size_t j = 0; j < cycle.size(); ++j) t += (j ? "," : "") + std::to_string(cycle[j]);
      t += ")";
      break;
  }
  return path.empty() ? t : out + ";" + t;
}

std::optional<std::size_t> separation_level(const Arity& arity, const BoundaryPoint& x,
                                            const BoundaryPoint& y) {
  auto period = [](const BoundaryPoint& p) { return p.tail == BoundaryPoint::Tail::kCycle ? p.cycle.size() : 1; };
  std::size_t start = std::max({x.path.size(), y.path.size(), arity.prefix().size()});
  std::size_t span = std::lcm(std::lcm(period(x), period(y)), arity.cycle().size());
  for (std::size_t j = 0; j < start + span; ++j) {
    auto cx = x.child(arity, j), cy = y.child(arity, j);
    if (!cx || !cy)
      throw UndecidableError("rays " + x.to_string() + " and " + y.to_string() + " cannot be compared past their paths");
    if (*cx != *cy) return j + 1;
  }
  return std::nullopt;
}

bool same_ray(const Arity& arity, const BoundaryPoint& x, const BoundaryPoint& y) {
  return !separation_level(arity, x, y);
}

namespace {

std::vector<Vertex> ray_vertices(const RootedTree& t, const std::vector<BoundaryPoint>& rays,
                                 std::size_t level) {
  std::set<Vertex> out;
  for (const auto& r : rays) out.insert(t.vertex(r.prefix(t.arity(), level)));
  return {out.begin(), out.end()};
}

}  // namespace

SmallnessProfile smallness_profile(const TruncatedTreeGroup& g, const std::vector<BoundaryPoint>& f,
                                   std::size_t level) {
  if (level < 1 || level > g.depth()) throw InputError("smallness level must lie in [1, depth]");
  const RootedTree& t = g.tree();
  for (const auto& r : f) r.validate(t.arity());
  SmallnessProfile out;
  out.level = level;
  TreeSubgroup gf = g.stabilizer(ray_vertices(t, f, g.depth()));
  for (std::size_t j = 1; j <= level; ++j) out.counts_by_level.push_back(gf.orbits(j).size());
  out.orbits = gf.orbits(level);
  auto rays_here = ray_vertices(t, f, level);
  out.ray_vertices = rays_here.size();
  if (f.empty()) {
    out.omega.push_back({Vertex{0, 0}, g.whole().orbits(level).size()});
  } else {
    for (std::size_t j = 0; j < level; ++j) {
      auto on_ray = ray_vertices(t, f, j + 1);
      for (const Vertex& u : ray_vertices(t, f, j)) {
        for (unsigned c = 0; c < t.arity(j); ++c) {
          Vertex v{j + 1, u.index * t.arity(j) + c};
          if (std::binary_search(on_ray.begin(), on_ray.end(), v)) continue;
          out.omega.push_back({v, g.rigid_stabilizer(v).orbits(level, v).size()});
        }
      }
    }
  }
  out.predicted = out.ray_vertices;
  for (const auto& o : out.omega) out.predicted += o.orbit_count;
  out.matches_prediction = out.predicted == out.orbits.size();
  out.within_prediction = out.orbits.size() <= out.predicted;
  out.linear_envelope = true;
  for (std::size_t j = 1; j <= level; ++j)
    if (out.counts_by_level[j - 1] > 1 + j * f.size() * t.arity().max_value()) out.linear_envelope = false;
  return out;
}

// Enumeration cap for the one-level-deeper truncation behind the finite-index test.
constexpr std::uint64_t kIndexProbeCap = std::uint64_t{1} << 18;

BranchVerdict branch_independence(const TruncatedTreeGroup& g, const std::vector<BoundaryPoint>& a,
                                  const std::vector<BoundaryPoint>& base,
                                  const std::vector<BoundaryPoint>& other) {
  const Arity& arity = g.tree().arity();
  for (const auto* set : {&a, &base, &other})
    for (const auto& p : *set) p.validate(arity);
  if (a.empty()) throw InputError("the independence query needs at least one ray");
  BranchVerdict out;
  auto in = [&](const BoundaryPoint& x, const std::vector<BoundaryPoint>& set) {
    return std::any_of(set.begin(), set.end(), [&](const BoundaryPoint& y) { return same_ray(arity, x, y); });
  };
  std::vector<BoundaryPoint> rest;
  for (const auto& x : a)
    if (!in(x, base)) rest.push_back(x);
  out.working_depth = g.depth();
  if (rest.empty()) {
    out.acl_member = true;
    out.mu = out.nm = Verdict::kIndependent;
    out.open_witness = 0;
    out.orbit_open_from = 0;
    out.measure_lower = 1;
    out.detail = "every ray of a lies in A; G_Aa = G_A";
    return out;
  }
  const BoundaryPoint* collision = nullptr;
  for (const auto& x : rest)
    if (in(x, other)) {
      collision = &x;
      break;
    }
  std::size_t m = 0;
  std::size_t growth_from = 1;  // levels where the collision ray has left every ray of A
  if (collision) {
    for (const auto& y : base) growth_from = std::max(growth_from, *separation_level(arity, *collision, y));
  } else {
    for (const auto& x : rest) {
      for (const auto* set : {&base, &other})
        for (const auto& y : *set) m = std::max(m, *separation_level(arity, x, y));
    }
    out.separation = m;
  }
  std::size_t depth = collision ? std::max(g.depth(), growth_from + 1) : std::max(g.depth(), m + 1);
  out.working_depth = depth;
  std::shared_ptr<const TruncatedTreeGroup> deeper;
  const TruncatedTreeGroup* h = &g;
  if (depth != g.depth()) {
    deeper = g.with_depth(depth);
    h = deeper.get();
  }
  const RootedTree& t = h->tree();
  auto vertices = [&](const std::vector<BoundaryPoint>& rays) {
    std::vector<Vertex> out;
    for (const auto& r : rays) out.push_back(t.vertex(r.prefix(arity, depth)));
    return out;
  };
  std::vector<Vertex> va = vertices(base), vb = vertices(other), vt = vertices(rest);
  std::vector<Vertex> vab = va;
  vab.insert(vab.end(), vb.begin(), vb.end());
  TreeSubgroup ga = h->stabilizer(va), gab = h->stabilizer(vab);
  std::vector<std::uint64_t> tuple;
  for (const auto& v : vt) tuple.push_back(v.index);
  auto o_ab = gab.tuple_orbit(depth, tuple);

  if (collision) {
    bool increasing = true;
    for (std::size_t k = 1; k <= depth; ++k) {
      Vertex y = t.vertex(collision->prefix(arity, k));
      out.index_sequence.push_back(Integer(static_cast<unsigned long>(ga.vertex_orbit(y).size())));
      if (k > growth_from && out.index_sequence[k - 1] <= out.index_sequence[k - 2]) increasing = false;
    }
    out.mu = increasing ? Verdict::kDependent : Verdict::kUnknown;
    out.detail = increasing ? "a ray of a lies in B \\ A; [G_A : G_(A,a)] grows strictly from level " + std::to_string(growth_from)
                            : "a ray of a lies in B \\ A but the stabilizer indices stop growing";
  } else {
    TreeSubgroup l = ga.intersect(h->rigid_level_stabilizer(m));
    auto o_l = l.tuple_orbit(depth, tuple);
    bool finite_index = true, probe_capped = false;
    if (h->whole().rep() == TreeSubgroup::Rep::kEnumerated) {
      // The witness is open only if [G_A : L] does not grow with the truncation.
      try {
        auto next = g.with_depth(depth + 1, kIndexProbeCap);
        std::vector<Vertex> va1;
        for (const auto& r : base) va1.push_back(next->tree().vertex(r.prefix(arity, depth + 1)));
        TreeSubgroup ga1 = next->stabilizer(va1);
        Integer idx1 = ga1.order() / ga1.intersect(next->rigid_level_stabilizer(m)).order();
        finite_index = idx1 == ga.order() / l.order();
      } catch (const CapacityError&) {
        finite_index = false;
        probe_capped = true;
      }
    }
    if (!finite_index) {
      out.mu = Verdict::kUnknown;
      out.detail = probe_capped ? "the depth " + std::to_string(depth + 1) +
                                      " truncation exceeds the probe cap; the index of rigid level stabilizer " +
                                      std::to_string(m) + " is unconfirmed"
                                : "rigid level stabilizer " + std::to_string(m) + " has growing index; no open witness";
    } else if (std::includes(o_ab.begin(), o_ab.end(), o_l.begin(), o_l.end())) {
      out.mu = Verdict::kIndependent;
      out.open_witness = m;
      out.witness_index = ga.order() / l.order();
      out.measure_lower = make_rational(1, out.witness_index);
      out.detail = "G_A n rist(" + std::to_string(m) + ") lies in G_AB G_Aa";
    } else {
      out.mu = Verdict::kUnknown;
      out.detail = "no open subgroup witness at separation level " + std::to_string(m);
    }
  }

  auto o_a = ga.tuple_orbit(depth, tuple);
  out.nm = Verdict::kDependent;
  for (std::size_t m0 = 0; m0 < depth; ++m0) {
    bool inside = true;
    for (const auto& u : o_a) {
      bool in_cylinder = true;
      for (std::size_t j = 0; j < u.size() && in_cylinder; ++j)
        in_cylinder = t.ancestor({depth, u[j]}, m0) == t.ancestor({depth, tuple[j]}, m0);
      if (in_cylinder && !std::binary_search(o_ab.begin(), o_ab.end(), u)) {
        inside = false;
        break;
      }
    }
    if (inside) {
      out.nm = Verdict::kIndependent;
      out.orbit_open_from = m0;
      break;
    }
  }
  return out;
}

BoundaryChecks boundary_mu_checks(const TruncatedTreeGroup& g, const BoundaryPoint& delta,
                                  const std::vector<BoundaryPoint>& f) {
  BoundaryChecks out;
  out.verdict = branch_independence(g, {delta}, {}, f);
  out.acl_member = out.verdict.mu == Verdict::kDependent;
  Integer order = g.whole().order();
  out.strictly_increasing = true;
  for (std::size_t k = 1; k <= g.depth(); ++k) {
    Integer idx = order / g.stabilizer(ray_vertices(g.tree(), f, k)).order();
    if (!out.stabilizer_indices.empty() && idx <= out.stabilizer_indices.back()) out.strictly_increasing = false;
    out.stabilizer_indices.push_back(idx);
  }
  return out;
}

}  // namespace muind
