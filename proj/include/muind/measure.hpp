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

#ifndef MUIND_MEASURE_HPP
#define MUIND_MEASURE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "muind/perm.hpp"
#include "muind/rational.hpp"

namespace muind {

// Normalized counting measure on a finite group (or on a subgroup of it,
// which is how the relative measures over a base set are taken).
class NormalizedMeasure {
 public:
  explicit NormalizedMeasure(Subgroup ambient) : ambient_(std::move(ambient)) {}

  const Subgroup& ambient() const noexcept { return ambient_; }

  // |s| / |ambient|. Throws InputError unless s is a subset of the ambient group.
  Rational operator()(const ElementSet& s) const;
  bool positive(const ElementSet& s) const { return (*this)(s) > 0; }

 private:
  Subgroup ambient_;
};

// |G_AB G_AC| / |G_A| inside S_n when A has p points, B adds q points outside
// A, C has r points outside A of which r_prime also avoid B:
//
//   prod_{k < r_prime} (n - p - q - k) / prod_{k < r} (n - p - k)
//
// Requires p + q + r < n and r_prime <= r.
Rational double_coset_ratio(std::uint64_t n, std::uint64_t p, std::uint64_t q, std::uint64_t r,
                            std::uint64_t r_prime);

// Same quotient with the weaker precondition that the slices fit into [n]:
// p + q + r_prime <= n and p + r <= n.
Rational slice_ratio(const Integer& n, std::uint64_t p, std::uint64_t q, std::uint64_t r,
                     std::uint64_t r_prime);

// Level sizes n_0, n_1, ... of a product of finite levels.
class LevelSizes {
 public:
  enum class Kind { kGeometric, kLinear, kPeriodic, kTable };

  // n_i = base^(i + shift).
  static LevelSizes geometric(unsigned base, unsigned shift = 1);
  // n_i = slope * i + offset.
  static LevelSizes linear(Integer slope, Integer offset);
  // n_i = values[i mod values.size()].
  static LevelSizes periodic(std::vector<Integer> values);
  // Only the listed levels exist; nothing is known past them.
  static LevelSizes table(std::vector<Integer> values);

  Kind kind() const noexcept { return kind_; }
  std::optional<Integer> at(std::size_t level) const;
  // Throws UndecidableError past the end of a table.
  Integer at_checked(std::size_t level) const;

  bool has_tail() const noexcept { return kind_ != Kind::kTable; }
  bool unbounded() const noexcept;
  std::size_t period() const noexcept;
  // Smallest level >= from beyond which every n_i >= bound, if any.
  std::optional<std::size_t> first_level_at_least(const Integer& bound, std::size_t from) const;

  unsigned base() const noexcept { return base_; }
  unsigned shift() const noexcept { return shift_; }
  const Integer& slope() const noexcept { return slope_; }
  const Integer& offset() const noexcept { return offset_; }
  const std::vector<Integer>& values() const noexcept { return values_; }

  std::string describe() const;

 private:
  LevelSizes() = default;
  Kind kind_ = Kind::kTable;
  unsigned base_ = 0;
  unsigned shift_ = 0;
  Integer slope_;
  Integer offset_;
  std::vector<Integer> values_;
};

// Tail families for per-level ratios.
struct SliceFamily {
  std::uint64_t p = 0, q = 0, r = 0, r_prime = 0;
  bool operator==(const SliceFamily&) const = default;
};
struct ConstantFamily {
  Rational value;
  bool operator==(const ConstantFamily&) const = default;
};
// 1 / n_i!, the measure of a singleton in S_{n_i}.
struct InverseFactorialFamily {
  bool operator==(const InverseFactorialFamily&) const = default;
};
using LevelFamily = std::variant<SliceFamily, ConstantFamily, InverseFactorialFamily>;

Rational family_value(const LevelFamily& family, const Integer& n);
std::string describe(const LevelFamily& family);

// Levels >= start take families[level mod families.size()].
struct RatioTail {
  std::size_t start = 0;
  std::vector<LevelFamily> families;
};

struct RatioSequence {
  std::vector<Rational> prefix;        // levels [0, tail->start) or all known levels
  std::optional<RatioTail> tail;       // absent: nothing known past the prefix
  std::optional<LevelSizes> sizes;     // needed by slice and factorial families
};

enum class ProductSign { kPositive, kZero, kUnknown };

enum class TailCertificate {
  kNone,
  kZeroFactor,
  kDeficiencySetFinite,
  kDeficiencySetInfinite,
  kComparisonSumConverges,
  kComparisonSumDiverges,
};

std::string to_string(ProductSign sign);
std::string to_string(TailCertificate cert);
std::optional<ProductSign> product_sign_from_string(const std::string& text);
std::optional<TailCertificate> tail_certificate_from_string(const std::string& text);

struct ProductVerdict {
  ProductSign sign = ProductSign::kUnknown;
  TailCertificate certificate = TailCertificate::kNone;
  Rational partial = 1;             // product over the explicit prefix
  std::size_t partial_levels = 0;
  Rational lower = 0;               // rigorous bounds on the infinite product
  Rational upper = 1;
  std::size_t bound_level = 0;      // levels multiplied exactly for the bounds
  Rational tail_sum_bound = 0;      // bound on sum (1 - D_i) past bound_level
  std::vector<std::size_t> witness_residues;
  std::size_t residue_period = 1;
  std::string detail;
};

// Decides positivity of prod D_i. `min_exact_levels` forces at least that
// many levels to be multiplied exactly when computing bounds.
ProductVerdict infinite_product_verdict(const RatioSequence& sequence,
                                        std::size_t min_exact_levels = 0);

}  // namespace muind

#endif  // MUIND_MEASURE_HPP
