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

#include <optional>
#include <string>
#include <string_view>

#include "t2sf/sql/ast.h"

namespace t2sf::sql {

enum class Difficulty { kEasy = 0, kMedium = 1, kHard = 2, kExtraHard = 3 };

std::string to_string(Difficulty d);
std::optional<Difficulty> difficulty_from_string(std::string_view s);

// The three component tallies the Spider hardness rules are defined over.
struct HardnessCounts {
  int component1 = 0;  // WHERE, GROUP BY, ORDER BY, LIMIT, extra tables, ORs, LIKEs
  int component2 = 0;  // nested queries in conditions, set operation, CTE bodies
  int others = 0;      // multiple aggregates / select columns / conditions / group keys
};

HardnessCounts hardness_counts(const SelectStmt& stmt);
Difficulty classify_counts(const HardnessCounts& c);

// Component difficulty of a query; depends only on its syntactic shape.
Difficulty classify_components(const SelectStmt& stmt);
Difficulty classify_components(std::string_view sql);

}  // namespace t2sf::sql
