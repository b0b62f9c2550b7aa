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

#ifndef MUIND_TESTS_GEN_HPP
#define MUIND_TESTS_GEN_HPP

// Seeded generators for the property tests. Every draw is reproducible from
// the seed printed by the failing case.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "muind/perm.hpp"
#include "muind/product.hpp"
#include "muind/tree.hpp"

namespace muind::gen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool coin() { return below(2) == 1; }

  Perm perm(std::size_t degree) {
    std::vector<Point> images(degree);
    for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<Point>(i);
    std::shuffle(images.begin(), images.end(), rng_);
    return Perm(images);
  }

  // Distinct points of {0, .., degree-1}.
  Tuple points(std::size_t degree, std::size_t count) {
    Tuple all(degree);
    for (std::size_t i = 0; i < degree; ++i) all[i] = static_cast<Point>(i);
    std::shuffle(all.begin(), all.end(), rng_);
    all.resize(std::min(count, degree));
    return all;
  }

  TailSelector tail() {
    switch (below(6)) {
      case 0: return TailSelector::first();
      case 1: return TailSelector::last();
      case 2: return TailSelector::kth(2);
      case 3: return TailSelector::kth(3);
      case 4: return TailSelector::cycle({SymVal::constant(1), SymVal::last()});
      default: return TailSelector::cycle({SymVal::constant(2), SymVal::constant(1), SymVal::last()});
    }
  }

  // A valid point of s with an explicit prefix of at most `max_len` levels.
  ProductPoint product_point(const ProductStructure& s, std::size_t max_len = 3) {
    while (true) {
      ProductPoint p;
      std::size_t len = between(0, max_len);
      for (std::size_t i = 0; i < len; ++i) {
        std::size_t n = s.n(i).get_ui();
        p.coords.push_back(to_integer(between(1, std::min<std::size_t>(n, 4))));
      }
      p.tail = tail();
      try {
        s.validate(p);
        return p;
      } catch (const std::exception&) {
      }
    }
  }

  ProductPointSet product_set(const ProductStructure& s, std::size_t lo, std::size_t hi) {
    ProductPointSet out;
    for (std::size_t k = between(lo, hi); k > 0; --k) out.push_back(product_point(s));
    return out;
  }

  BoundaryPoint ray(unsigned arity, std::size_t max_len) {
    BoundaryPoint p;
    for (std::size_t i = between(0, max_len); i > 0; --i) p.path.push_back(static_cast<unsigned>(below(arity)));
    switch (below(3)) {
      case 0: p.tail = BoundaryPoint::Tail::kLeft; break;
      case 1: p.tail = BoundaryPoint::Tail::kRight; break;
      default:
        p.tail = BoundaryPoint::Tail::kCycle;
        p.cycle = {static_cast<unsigned>(below(arity)), static_cast<unsigned>(below(arity))};
    }
    return p;
  }

  // Pairwise distinct rays.
  std::vector<BoundaryPoint> rays(unsigned arity, std::size_t count, std::size_t max_len) {
    std::vector<BoundaryPoint> out;
    Arity a = Arity::constant(arity);
    while (out.size() < count) {
      auto p = ray(arity, max_len);
      if (std::none_of(out.begin(), out.end(), [&](const BoundaryPoint& q) { return same_ray(a, p, q); }))
        out.push_back(p);
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace muind::gen

#endif  // MUIND_TESTS_GEN_HPP
