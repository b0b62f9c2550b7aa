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

#ifndef MUIND_ERRORS_HPP
#define MUIND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace muind {

// Error categories map one-to-one onto the status codes of the C API.
enum class ErrorCode {
  kInput = 1,
  kParse = 2,
  kCapacity = 3,
  kUndecidable = 4,
  kInternal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorCode::kInput, what) {}
};

// Raised by the structure-spec reader. Carries the offending line and field;
// line 0 stands for a command-line override.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& what)
      : Error(ErrorCode::kParse, (line == 0 ? std::string("command line") : "line " + std::to_string(line)) +
                                     (field.empty() ? "" : ", field '" + field + "'") +
                                     ": " + what),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

// Explicit enumeration would exceed the configured element cap.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what) : Error(ErrorCode::kCapacity, what) {}
};

// The query involves a point whose tail cannot be evaluated symbolically.
class UndecidableError : public Error {
 public:
  explicit UndecidableError(const std::string& what)
      : Error(ErrorCode::kUndecidable, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorCode::kInternal, what) {}
};

}  // namespace muind

#endif  // MUIND_ERRORS_HPP
