// Copyright 2026 The Text2SQL-Flow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace t2sf::db {

struct Blob {
  std::vector<std::uint8_t> bytes;
  bool operator==(const Blob&) const = default;
};

// One result cell.
using Value = std::variant<std::monostate, std::int64_t, double, std::string, Blob>;

// SQL literal spelling of a value (NULL, 42, 1.5, 'it''s', X'0a').
std::string to_sql_literal(const Value& v);
// Display text: NULL prints as "NULL", text unquoted.
std::string to_display(const Value& v);
nlohmann::json to_json_value(const Value& v);

// Cell equality used for result comparison: NULL equals NULL, integers and
// reals compare numerically with absolute tolerance `abs_tol`.
bool values_equal(const Value& a, const Value& b, double abs_tol);

using Row = std::vector<Value>;

struct ExecutionResult {
  std::vector<std::string> columns;
  std::vector<Row> rows;
  std::chrono::microseconds elapsed{0};
};

struct ExecutionError {
  enum class Kind { kSyntax, kRuntime, kTimeout, kConnection };
  Kind kind = Kind::kRuntime;
  std::string message;
};

std::string to_string(ExecutionError::Kind k);

using ExecOutcome = std::variant<ExecutionResult, ExecutionError>;

inline bool succeeded(const ExecOutcome& o) { return std::holds_alternative<ExecutionResult>(o); }

struct ComparisonOutcome {
  enum class Mode { kOrdered, kMultiset };
  bool equal = false;
  Mode mode = Mode::kMultiset;
  std::optional<std::string> detail;
};

// Compares two result sets row by row (kOrdered) or as row multisets.
ComparisonOutcome compare_results(const ExecutionResult& a, const ExecutionResult& b,
                                  ComparisonOutcome::Mode mode, double abs_tol = 1e-9);

}  // namespace t2sf::db
