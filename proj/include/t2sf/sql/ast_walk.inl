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

// Walk helpers for ast.h; included at its end.

namespace t2sf::sql::detail {

template <typename ExprFn, typename NestedFn>
void walk_expr(const Expr& e, ExprFn& on_expr, NestedFn& on_nested);

template <typename ExprFn, typename NestedFn>
void walk_window(const WindowSpec& w, ExprFn& on_expr, NestedFn& on_nested) {
  for (const auto& p : w.partition_by) walk_expr(*p, on_expr, on_nested);
  for (const auto& o : w.order_by) walk_expr(*o.expr, on_expr, on_nested);
  for (const auto& f : w.frame_bounds) walk_expr(*f, on_expr, on_nested);
}

template <typename ExprFn, typename NestedFn>
void walk_expr(const Expr& e, ExprFn& on_expr, NestedFn& on_nested) {
  on_expr(e);
  for (const auto& c : e.children) walk_expr(*c, on_expr, on_nested);
  if (e.filter) walk_expr(*e.filter, on_expr, on_nested);
  for (const auto& o : e.arg_order_by) walk_expr(*o.expr, on_expr, on_nested);
  if (e.over) walk_window(*e.over, on_expr, on_nested);
  if (e.subquery) on_nested(*e.subquery);
}

template <typename ExprFn, typename NestedFn>
void walk_join(const JoinClause& j, ExprFn& on_expr, NestedFn& on_nested) {
  for (const auto& t : j.tables) {
    if (t.subquery) on_nested(*t.subquery);
    if (t.group) walk_join(*t.group, on_expr, on_nested);
    for (const auto& a : t.args) walk_expr(*a, on_expr, on_nested);
  }
  for (const auto& op : j.ops) {
    if (op.on) walk_expr(*op.on, on_expr, on_nested);
  }
}

template <typename ExprFn, typename NestedFn>
void walk_core(const SelectCore& core, ExprFn& on_expr, NestedFn& on_nested) {
  for (const auto& c : core.columns) walk_expr(*c.expr, on_expr, on_nested);
  for (const auto& row : core.values) {
    for (const auto& v : row) walk_expr(*v, on_expr, on_nested);
  }
  if (core.from) walk_join(*core.from, on_expr, on_nested);
  if (core.where) walk_expr(*core.where, on_expr, on_nested);
  for (const auto& g : core.group_by) walk_expr(*g, on_expr, on_nested);
  if (core.having) walk_expr(*core.having, on_expr, on_nested);
  for (const auto& w : core.windows) walk_window(w.spec, on_expr, on_nested);
}

}  // namespace t2sf::sql::detail

namespace t2sf::sql {

template <typename ExprFn, typename NestedFn>
void for_each_direct(const SelectStmt& stmt, ExprFn&& on_expr, NestedFn&& on_nested) {
  for (const auto& cte : stmt.ctes) on_nested(*cte.body);
  detail::walk_core(stmt.first, on_expr, on_nested);
  for (const auto& c : stmt.compounds) detail::walk_core(c.core, on_expr, on_nested);
  for (const auto& o : stmt.order_by) detail::walk_expr(*o.expr, on_expr, on_nested);
  if (stmt.limit) detail::walk_expr(*stmt.limit, on_expr, on_nested);
  if (stmt.offset) detail::walk_expr(*stmt.offset, on_expr, on_nested);
}

}  // namespace t2sf::sql
