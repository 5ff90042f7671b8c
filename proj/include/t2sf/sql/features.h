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

#include <string_view>

#include "t2sf/sql/ast.h"

namespace t2sf::sql {

// Structural features of one query. Flags and counts cover every nesting
// level (CTE bodies, FROM subqueries, expression subqueries).
struct SqlFeatureVector {
  bool has_window = false;
  bool has_set_op = false;
  bool has_subquery = false;
  bool has_aggregation = false;
  int case_count = 0;
  int where_count = 0;
  int join_count = 0;

  bool operator==(const SqlFeatureVector&) const = default;
};

// COUNT, SUM, AVG, MIN, MAX (single argument), GROUP_CONCAT, TOTAL.
bool is_aggregate_call(const Expr& e);

SqlFeatureVector extract_features(const SelectStmt& stmt);
SqlFeatureVector extract_features(std::string_view sql);

}  // namespace t2sf::sql
