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

#ifndef MUIND_RATIONAL_HPP
#define MUIND_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace muind {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer to_integer(std::uint64_t v) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return z;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// "p/q" with q omitted when it is 1.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

// Throws InputError on malformed input.
Rational parse_rational(const std::string& text);
Integer parse_integer(const std::string& text);

Integer factorial(std::uint64_t n);

// n (n-1) ... (n-k+1); 1 when k == 0.
Integer falling_factorial(const Integer& n, std::uint64_t k);

}  // namespace muind

#endif  // MUIND_RATIONAL_HPP
