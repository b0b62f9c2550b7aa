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

#include "muind/measure.hpp"

#include <algorithm>
#include <numeric>

#include "muind/errors.hpp"

namespace muind {

Rational NormalizedMeasure::operator()(const ElementSet& s) const {
  if (!s.is_subset_of(ambient_)) throw InputError("measure: set is not contained in the ambient group");
  return make_rational(Integer(static_cast<unsigned long>(s.size())),
                       Integer(static_cast<unsigned long>(ambient_.size())));
}

Rational slice_ratio(const Integer& n, std::uint64_t p, std::uint64_t q, std::uint64_t r,
                     std::uint64_t r_prime) {
  if (r_prime > r) throw InputError("slice ratio: r' exceeds r");
  if (to_integer(p) + to_integer(q) + to_integer(r_prime) > n || to_integer(p) + to_integer(r) > n)
    throw InputError("slice ratio: slices do not fit into a level of size " + n.get_str());
  Integer num = falling_factorial(n - to_integer(p) - to_integer(q), r_prime);
  Integer den = falling_factorial(n - to_integer(p), r);
  return make_rational(num, den);
}

Rational double_coset_ratio(std::uint64_t n, std::uint64_t p, std::uint64_t q, std::uint64_t r,
                            std::uint64_t r_prime) {
  if (to_integer(p) + to_integer(q) + to_integer(r) >= to_integer(n))
    throw InputError("double coset ratio requires p + q + r < n");
  if (r_prime > r) throw InputError("double coset ratio requires r' <= r");
  return slice_ratio(to_integer(n), p, q, r, r_prime);
}

LevelSizes LevelSizes::geometric(unsigned base, unsigned shift) {
  if (base < 2) throw InputError("geometric growth needs base >= 2");
  if (shift < 1) throw InputError("geometric growth needs shift >= 1 so that every level has >= 2 points");
  LevelSizes s;
  s.kind_ = Kind::kGeometric;
  s.base_ = base;
  s.shift_ = shift;
  return s;
}

LevelSizes LevelSizes::linear(Integer slope, Integer offset) {
  if (slope < 0) throw InputError("linear growth needs slope >= 0");
  if (offset < 2) throw InputError("linear growth needs offset >= 2");
  LevelSizes s;
  s.kind_ = Kind::kLinear;
  s.slope_ = std::move(slope);
  s.offset_ = std::move(offset);
  return s;
}

LevelSizes LevelSizes::periodic(std::vector<Integer> values) {
  if (values.empty()) throw InputError("periodic growth needs at least one value");
  for (const auto& v : values)
    if (v < 2) throw InputError("every level needs at least 2 points");
  LevelSizes s;
  s.kind_ = Kind::kPeriodic;
  s.values_ = std::move(values);
  return s;
}

LevelSizes LevelSizes::table(std::vector<Integer> values) {
  for (const auto& v : values)
    if (v < 2) throw InputError("every level needs at least 2 points");
  LevelSizes s;
  s.kind_ = Kind::kTable;
  s.values_ = std::move(values);
  return s;
}

std::optional<Integer> LevelSizes::at(std::size_t level) const {
  switch (kind_) {
    case Kind::kGeometric: {
      Integer out;
      mpz_ui_pow_ui(out.get_mpz_t(), base_, level + shift_);
      return out;
    }
    case Kind::kLinear:
      return Integer(slope_ * to_integer(level) + offset_);
    case Kind::kPeriodic:
      return values_[level % values_.size()];
    case Kind::kTable:
      if (level < values_.size()) return values_[level];
      return std::nullopt;
  }
  return std::nullopt;
}

Integer LevelSizes::at_checked(std::size_t level) const {
  auto v = at(level);
  if (!v) throw UndecidableError("level " + std::to_string(level) + " lies past the level table");
  return *v;
}

bool LevelSizes::unbounded() const noexcept {
  return kind_ == Kind::kGeometric || (kind_ == Kind::kLinear && slope_ > 0);
}

std::size_t LevelSizes::period() const noexcept {
  return kind_ == Kind::kPeriodic ? values_.size() : 1;
}

std::optional<std::size_t> LevelSizes::first_level_at_least(const Integer& bound,
                                                           std::size_t from) const {
  if (unbounded()) {
    std::size_t level = from;
    while (*at(level) < bound) ++level;
    return level;
  }
  if (kind_ == Kind::kTable) return std::nullopt;
  if (kind_ == Kind::kLinear) {
    if (offset_ >= bound) return from;
    return std::nullopt;
  }
  auto lowest = *std::min_element(values_.begin(), values_.end());
  if (lowest >= bound) return from;
  return std::nullopt;
}

std::string LevelSizes::describe() const {
  auto join = [](const std::vector<Integer>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + v[i].get_str();
    return out;
  };
  switch (kind_) {
    case Kind::kGeometric:
      return "geometric n_i = " + std::to_string(base_) + "^(i+" + std::to_string(shift_) + ")";
    case Kind::kLinear:
      return "linear n_i = " + slope_.get_str() + "*i + " + offset_.get_str();
    case Kind::kPeriodic:
      return "periodic [" + join(values_) + "]";
    case Kind::kTable:
      return "table [" + join(values_) + "]";
  }
  return {};
}

Rational family_value(const LevelFamily& family, const Integer& n) {
  return std::visit(
      [&](const auto& f) -> Rational {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, SliceFamily>) {
          return slice_ratio(n, f.p, f.q, f.r, f.r_prime);
        } else if constexpr (std::is_same_v<F, ConstantFamily>) {
          return f.value;
        } else {
          if (n > 100000) throw InputError("inverse factorial family: level too large to evaluate");
          return make_rational(1, factorial(n.get_ui()));
        }
      },
      family);
}

std::string describe(const LevelFamily& family) {
  return std::visit(
      [](const auto& f) -> std::string {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, SliceFamily>) {
          return "slice(p=" + std::to_string(f.p) + ",q=" + std::to_string(f.q) +
                 ",r=" + std::to_string(f.r) + ",r'=" + std::to_string(f.r_prime) + ")";
        } else if constexpr (std::is_same_v<F, ConstantFamily>) {
          return "constant(" + to_string(f.value) + ")";
        } else {
          return "inverse-factorial";
        }
      },
      family);
}

std::string to_string(ProductSign sign) {
  switch (sign) {
    case ProductSign::kPositive: return "positive";
    case ProductSign::kZero: return "zero";
    case ProductSign::kUnknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(TailCertificate cert) {
  switch (cert) {
    case TailCertificate::kNone: return "none";
    case TailCertificate::kZeroFactor: return "zero-factor";
    case TailCertificate::kDeficiencySetFinite: return "deficiency-set-finite";
    case TailCertificate::kDeficiencySetInfinite: return "deficiency-set-infinite";
    case TailCertificate::kComparisonSumConverges: return "comparison-sum-converges";
    case TailCertificate::kComparisonSumDiverges: return "comparison-sum-diverges";
  }
  return "none";
}

std::optional<ProductSign> product_sign_from_string(const std::string& text) {
  for (auto s : {ProductSign::kPositive, ProductSign::kZero, ProductSign::kUnknown})
    if (to_string(s) == text) return s;
  return std::nullopt;
}

std::optional<TailCertificate> tail_certificate_from_string(const std::string& text) {
  for (auto c : {TailCertificate::kNone, TailCertificate::kZeroFactor,
                 TailCertificate::kDeficiencySetFinite, TailCertificate::kDeficiencySetInfinite,
                 TailCertificate::kComparisonSumConverges, TailCertificate::kComparisonSumDiverges})
    if (to_string(c) == text) return c;
  return std::nullopt;
}

namespace {

enum class ClassBehaviour { kUnit, kConverging, kZeroFactor, kToZero, kDiverging };

int zero_priority(ClassBehaviour b) {
  switch (b) {
    case ClassBehaviour::kZeroFactor: return 3;
    case ClassBehaviour::kToZero: return 2;
    case ClassBehaviour::kDiverging: return 1;
    default: return 0;
  }
}

ClassBehaviour classify_constant(const Rational& v) {
  if (v < 0 || v > 1) throw InputError("level ratio " + to_string(v) + " outside [0, 1]");
  if (v == 1) return ClassBehaviour::kUnit;
  if (v == 0) return ClassBehaviour::kZeroFactor;
  // Infinitely many factors equal to v < 1.
  return ClassBehaviour::kToZero;
}

}  // namespace

ProductVerdict infinite_product_verdict(const RatioSequence& sequence,
                                        std::size_t min_exact_levels) {
  ProductVerdict out;
  out.partial = 1;
  for (const Rational& d : sequence.prefix) {
    if (d < 0 || d > 1) throw InputError("level ratio " + to_string(d) + " outside [0, 1]");
    out.partial *= d;
  }
  out.partial_levels = sequence.prefix.size();
  out.bound_level = out.partial_levels;

  if (out.partial == 0) {
    out.sign = ProductSign::kZero;
    out.certificate = TailCertificate::kZeroFactor;
    out.lower = out.upper = 0;
    out.detail = "a listed level ratio is zero";
    return out;
  }

  const bool sizes_have_tail = sequence.sizes && sequence.sizes->has_tail();
  if (!sequence.tail || sequence.tail->families.empty()) {
    out.sign = ProductSign::kUnknown;
    out.lower = 0;
    out.upper = out.partial;
    out.detail = "no tail description; only the explicit prefix is known";
    return out;
  }
  const RatioTail& tail = *sequence.tail;
  if (tail.start != sequence.prefix.size())
    throw InputError("ratio tail must start right after the explicit prefix");

  bool needs_sizes = std::any_of(tail.families.begin(), tail.families.end(), [](const auto& f) {
    return !std::holds_alternative<ConstantFamily>(f);
  });
  if (needs_sizes && !sizes_have_tail) {
    out.sign = ProductSign::kUnknown;
    out.lower = 0;
    out.upper = out.partial;
    out.detail = "level sizes are not known past the table; tail cannot be decided";
    return out;
  }

  const std::size_t fam_period = tail.families.size();
  const std::size_t size_period = needs_sizes ? sequence.sizes->period() : 1;
  const std::size_t period = std::lcm(fam_period, size_period);
  const bool unbounded = needs_sizes && sequence.sizes->unbounded();
  out.residue_period = period;

  std::vector<ClassBehaviour> behaviour(period);
  std::uint64_t max_p = 0, max_q = 0, max_r = 0;
  for (std::size_t rho = 0; rho < period; ++rho) {
    std::size_t level = tail.start + ((rho + period - tail.start % period) % period);
    const LevelFamily& fam = tail.families[level % fam_period];
    if (const auto* c = std::get_if<ConstantFamily>(&fam)) {
      behaviour[rho] = classify_constant(c->value);
      continue;
    }
    const Integer n = sequence.sizes->at_checked(level);
    if (std::holds_alternative<InverseFactorialFamily>(fam)) {
      // Every level has n_i >= 2, so each factor is at most 1/2.
      behaviour[rho] = ClassBehaviour::kDiverging;
      continue;
    }
    const auto& s = std::get<SliceFamily>(fam);
    if (!unbounded) {
      behaviour[rho] = classify_constant(slice_ratio(n, s.p, s.q, s.r, s.r_prime));
      if (behaviour[rho] == ClassBehaviour::kToZero && s.r_prime == s.r)
        behaviour[rho] = ClassBehaviour::kDiverging;
      continue;
    }
    if (s.r == 0 || (s.q == 0 && s.r_prime == s.r)) {
      behaviour[rho] = ClassBehaviour::kUnit;
    } else if (s.r_prime < s.r) {
      // D_i <= 1 / (n_i - p - r + 1) -> 0.
      behaviour[rho] = ClassBehaviour::kToZero;
    } else if (sequence.sizes->kind() == LevelSizes::Kind::kGeometric) {
      behaviour[rho] = ClassBehaviour::kConverging;
      max_p = std::max(max_p, s.p);
      max_q = std::max(max_q, s.q);
      max_r = std::max(max_r, s.r);
    } else {
      // 1 - D_i >= q / n_i with n_i linear in i: harmonic divergence.
      behaviour[rho] = ClassBehaviour::kDiverging;
    }
  }

  int worst = 0;
  for (auto b : behaviour) worst = std::max(worst, zero_priority(b));
  if (worst > 0) {
    out.sign = ProductSign::kZero;
    out.lower = out.upper = 0;
    for (std::size_t rho = 0; rho < period; ++rho)
      if (zero_priority(behaviour[rho]) == worst) out.witness_residues.push_back(rho);
    switch (worst) {
      case 3:
        out.certificate = TailCertificate::kZeroFactor;
        out.detail = "infinitely many zero factors";
        break;
      case 2:
        out.certificate = TailCertificate::kDeficiencySetInfinite;
        out.detail = "on an infinite residue class the factors are bounded away from 1 or tend to 0";
        break;
      default:
        out.certificate = TailCertificate::kComparisonSumDiverges;
        out.detail = "sum of (1 - D_i) diverges on an infinite residue class";
        break;
    }
    return out;
  }

  const bool any_converging =
      std::any_of(behaviour.begin(), behaviour.end(),
                  [](auto b) { return b == ClassBehaviour::kConverging; });

  auto exact_through = [&](std::size_t stop) {
    Rational prod = out.partial;
    for (std::size_t i = tail.start; i < stop; ++i) {
      const LevelFamily& fam = tail.families[i % fam_period];
      Integer n = needs_sizes ? sequence.sizes->at_checked(i) : Integer(0);
      prod *= family_value(fam, n);
    }
    return prod;
  };

  out.sign = ProductSign::kPositive;
  if (!any_converging) {
    out.certificate = TailCertificate::kDeficiencySetFinite;
    out.bound_level = std::max(tail.start, min_exact_levels);
    out.lower = out.upper = exact_through(out.bound_level);
    out.detail = "every tail factor equals 1";
    return out;
  }

  // 1 - D_i <= 2 r q / n_i once n_i >= 2 (p + r), and the geometric tail sum
  // past level L is at most 2 R Q / n_L * b / (b - 1).
  out.certificate = TailCertificate::kComparisonSumConverges;
  const unsigned b = sequence.sizes->base();
  const Rational threshold(1, 1024);
  std::size_t level = std::max(tail.start, min_exact_levels);
  const Integer need = 2 * (to_integer(max_p) + to_integer(max_r));
  Rational sum_bound;
  for (;; ++level) {
    Integer n = sequence.sizes->at_checked(level);
    if (n < need) continue;
    sum_bound = make_rational(2 * to_integer(max_r) * to_integer(max_q) * b, n * (b - 1));
    if (sum_bound <= threshold) break;
  }
  out.bound_level = level;
  out.tail_sum_bound = sum_bound;
  out.upper = exact_through(level);
  out.lower = out.upper * (1 - sum_bound);
  out.detail = "tail deficiencies are O(1/n_i) with geometric n_i";
  return out;
}

}  // namespace muind
