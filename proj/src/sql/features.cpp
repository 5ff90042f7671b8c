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

#include "t2sf/sql/features.h"

#include "t2sf/sql/parser.h"

namespace t2sf::sql {
namespace {

void accumulate(const SelectStmt& stmt, bool nested, SqlFeatureVector& f) {
  if (nested) f.has_subquery = true;
  if (!stmt.compounds.empty()) f.has_set_op = true;

  auto count_core = [&f](const SelectCore& core) {
    if (core.where) ++f.where_count;
    if (core.from) {
      // Each comma or JOIN keyword joins one more table; parenthesized
      // join groups count their inner operators as well.
      auto count_join = [&f](const JoinClause& jc, auto& self) -> void {
        f.join_count += static_cast<int>(jc.ops.size());
        for (const auto& t : jc.tables) {
          if (t.group) self(*t.group, self);
        }
      };
      count_join(*core.from, count_join);
    }
  };
  count_core(stmt.first);
  for (const auto& c : stmt.compounds) count_core(c.core);

  for_each_direct(
      stmt,
      [&f](const Expr& e) {
        if (e.kind == ExprKind::kCase) ++f.case_count;
        if (e.kind == ExprKind::kFunction) {
          if (e.is_windowed()) {
            f.has_window = true;
          } else if (is_aggregate_call(e)) {
            f.has_aggregation = true;
          }
        }
      },
      [&f](const SelectStmt& inner) { accumulate(inner, true, f); });
}

}  // namespace

bool is_aggregate_call(const Expr& e) {
  if (e.kind != ExprKind::kFunction) return false;
  const std::string& n = e.op;
  if (n == "COUNT" || n == "SUM" || n == "AVG" || n == "GROUP_CONCAT" || n == "TOTAL") {
    return true;
  }
  // Multi-argument MIN/MAX are scalar functions in SQLite.
  return (n == "MIN" || n == "MAX") && e.children.size() == 1;
}

SqlFeatureVector extract_features(const SelectStmt& stmt) {
  SqlFeatureVector f;
  accumulate(stmt, false, f);
  return f;
}

SqlFeatureVector extract_features(std::string_view sql) {
  return extract_features(*parse_query(sql).stmt);
}

}  // namespace t2sf::sql
