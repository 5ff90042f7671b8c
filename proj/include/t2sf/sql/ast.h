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

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace t2sf::sql {

struct SelectStmt;
struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class ExprKind {
  kColumn,       // op = column name, qualifiers = [schema.]table
  kLiteral,      // op = literal spelling (numbers, strings, blobs, NULL, TRUE, ...)
  kParameter,
  kPlaceholder,  // the mask token used where an identifier or literal goes
  kStar,         // * or tbl.* in a result list / COUNT(*)
  kUnary,        // op in {NOT, -, +, ~}
  kBinary,       // op in {OR, AND, =, <, IS, IS NOT, +, ||, ...}
  kFunction,     // op = upper-cased function name
  kCase,
  kCast,         // children[0]; op = type name
  kSubquery,     // scalar or row subquery: `subquery`
  kExists,       // EXISTS (subquery)
  kIn,           // children[0] IN (children[1..]) or IN (subquery)
  kBetween,      // children = {value, low, high}
  kLike,         // op in {LIKE, GLOB, REGEXP, MATCH}; children = {value, pattern[, escape]}
  kNullTest,     // children[0] IS NULL / NOT NULL (negated)
  kCollate,      // children[0]; op = collation
  kRow,          // (a, b, ...)
};

struct OrderingTerm {
  ExprPtr expr;
  bool descending = false;
};

struct WindowSpec {
  std::string base_name;
  std::vector<ExprPtr> partition_by;
  std::vector<OrderingTerm> order_by;
  std::vector<ExprPtr> frame_bounds;  // expressions inside the frame clause
};

struct Expr {
  ExprKind kind = ExprKind::kLiteral;
  std::string op;
  std::vector<std::string> qualifiers;
  std::vector<ExprPtr> children;
  std::unique_ptr<SelectStmt> subquery;
  std::unique_ptr<WindowSpec> over;  // inline window
  std::string over_name;             // OVER name
  ExprPtr filter;                    // FILTER (WHERE ...)
  std::vector<OrderingTerm> arg_order_by;
  bool distinct = false;
  bool negated = false;      // NOT IN / NOT LIKE / NOT BETWEEN / NOT NULL
  bool has_operand = false;  // CASE x WHEN ...
  bool has_else = false;

  bool is_windowed() const { return over != nullptr || !over_name.empty(); }
};

struct ResultColumn {
  ExprPtr expr;  // kStar for * / tbl.*
  std::string alias;
};

struct JoinClause;

struct TableRef {
  enum class Kind { kTable, kSubquery, kFunction, kGroup };
  Kind kind = Kind::kTable;
  std::vector<std::string> name;  // [schema.]table or function name
  std::string alias;
  std::unique_ptr<SelectStmt> subquery;
  std::unique_ptr<JoinClause> group;  // parenthesized join
  std::vector<ExprPtr> args;          // table-valued function arguments
};

struct JoinOp {
  bool comma = false;
  bool natural = false;
  std::string kind;  // "", LEFT, RIGHT, FULL, INNER, CROSS
  ExprPtr on;
  std::vector<std::string> using_columns;
};

struct JoinClause {
  std::vector<TableRef> tables;
  std::vector<JoinOp> ops;  // ops[i] joins tables[i + 1]
};

struct NamedWindow {
  std::string name;
  WindowSpec spec;
};

struct SelectCore {
  bool distinct = false;
  std::vector<ResultColumn> columns;
  std::optional<JoinClause> from;
  ExprPtr where;
  std::vector<ExprPtr> group_by;
  ExprPtr having;
  std::vector<NamedWindow> windows;
  std::vector<std::vector<ExprPtr>> values;  // VALUES rows; columns empty when set
};

enum class CompoundOp { kUnion, kUnionAll, kIntersect, kExcept };

struct CompoundTerm {
  CompoundOp op = CompoundOp::kUnion;
  SelectCore core;
};

struct CommonTableExpr {
  std::string name;
  std::vector<std::string> columns;
  std::unique_ptr<SelectStmt> body;
};

struct SelectStmt {
  bool recursive = false;
  std::vector<CommonTableExpr> ctes;
  SelectCore first;
  std::vector<CompoundTerm> compounds;
  std::vector<OrderingTerm> order_by;
  ExprPtr limit;
  ExprPtr offset;
};

// Calls `on_expr(expr)` for every expression reachable from `stmt` without
// entering nested statements, and `on_nested(stmt)` for each statement nested
// directly inside (CTE bodies, FROM subqueries, expression subqueries).
template <typename ExprFn, typename NestedFn>
void for_each_direct(const SelectStmt& stmt, ExprFn&& on_expr, NestedFn&& on_nested);

}  // namespace t2sf::sql

#include "t2sf/sql/ast_walk.inl"
