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


#ifndef MUIND_SRC_REPORT_HPP
#define MUIND_SRC_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "muind/measure.hpp"
#include "muind/product.hpp"
#include "muind/rational.hpp"

namespace muind {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "muind-report/1";
inline constexpr const char* kVersion = "0.1.0";

// Exit status of a command: 0 decided, 2 undecided, 1 error.
enum class Status { kDecided = 0, kError = 1, kUnknown = 2 };

struct Report {
  Json json;
  std::string human;
  Status status = Status::kDecided;
};

// Rationals and integers travel as decimal strings; a rational is [num, den].
Json to_json(const Rational& q);
Json to_json(const Integer& z);
Rational rational_from_json(const Json& j);
Integer integer_from_json(const Json& j);

Json to_json(const LevelSet& s);
Json to_json(const ProductVerdict& v);
Json to_json(const LevelRow& row);
Json to_json(const IndependenceVerdict& v);

Json report_header(const std::string& command);

// Re-verifies the certificate of a machine-readable report without
// recomputing the verdict. Returns the list of problems; empty means valid.
std::vector<std::string> check_report(const Json& report);

}  // namespace muind

#endif  // MUIND_SRC_REPORT_HPP
