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


#ifndef MUIND_SPEC_FORMAT_HPP
#define MUIND_SPEC_FORMAT_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "muind/perm.hpp"
#include "muind/product.hpp"
#include "muind/tree.hpp"

namespace muind {

// A structure described by `key = value` lines; `#` starts a comment.
//
//   kind = finite-perm | product-symmetric | tree-full-aut | tree-recursion
//
// finite-perm:        points = a b c ...; gen NAME = (a b)(c d) ...; cap = N
// product-symmetric:  growth = geometric | linear | periodic | table;
//                     base, shift | slope, offset | values; prefix; depth
// tree-full-aut:      arity = cycle values; arity-prefix = values; depth
// tree-recursion:     arity = k; depth; cap; gen NAME = r0 .. r(k-1) | s0 .. s(k-1)
struct StructureSpec {
  enum class Kind { kFinitePerm, kProductSymmetric, kTreeFullAut, kTreeRecursion };
  Kind kind = Kind::kFinitePerm;
  std::string text;
  std::shared_ptr<const FiniteAction> action;
  std::shared_ptr<const ProductStructure> product;
  std::shared_ptr<const TruncatedTreeGroup> tree;

  bool is_tree() const noexcept { return kind == Kind::kTreeFullAut || kind == Kind::kTreeRecursion; }
  std::string describe() const;
};

std::string to_string(StructureSpec::Kind kind);

// Throws ParseError with the line and field of the first problem.
// A depth override replaces any `depth` line.
StructureSpec parse_spec(std::string_view text, std::optional<std::size_t> depth_override = std::nullopt);
StructureSpec load_spec(const std::string& path, std::optional<std::size_t> depth_override = std::nullopt);

std::vector<std::string> split_words(std::string_view text);

// "1,3;last", "last", "2,2", "cycle(first,last)", "5;k3".
ProductPoint parse_product_point(std::string_view text);
std::vector<ProductPoint> parse_product_points(std::string_view text);
// "0.1.1;left", "right", "cycle(0,1)", "1.0;none".
BoundaryPoint parse_boundary_point(std::string_view text);
std::vector<BoundaryPoint> parse_boundary_points(std::string_view text);
// Labels of a finite action, whitespace separated.
Tuple parse_finite_points(const FiniteAction& action, std::string_view text);

}  // namespace muind

#endif  // MUIND_SPEC_FORMAT_HPP
