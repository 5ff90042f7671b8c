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

#include "t2sf/sql/hardness.h"

#include <vector>

#include "t2sf/sql/features.h"
#include "t2sf/sql/parser.h"

// Transcription of the hardness function from the Spider evaluation script
// (evaluation.py: count_component1, count_component2, count_others,
// eval_hardness) onto this AST. The script's quirks are kept: aggregate
// counting over WHERE conditions looks at the NOT flag, and over HAVING it
// also counts the AND/OR connectors.

namespace t2sf::sql {
namespace {

struct Conditions {
  std::vector<const Expr*> leaves;
  int ors = 0;
  int connectors = 0;
};

void flatten(const Expr& e, Conditions& out) {
  if (e.kind == ExprKind::kBinary && (e.op == "AND" || e.op == "OR")) {
    if (e.op == "OR") ++out.ors;
    ++out.connectors;
    flatten(*e.children[0], out);
    flatten(*e.children[1], out);
    return;
  }
  out.leaves.push_back(&e);
}

Conditions conditions_of(const Expr* e) {
  Conditions c;
  if (e) flatten(*e, c);
  return c;
}

const Expr* strip_not(const Expr* e) {
  while (e->kind == ExprKind::kUnary && e->op == "NOT") e = e->children[0].get();
  return e;
}

bool leaf_negated(const Expr& leaf) {
  if (leaf.kind == ExprKind::kUnary && leaf.op == "NOT") return true;
  if (leaf.kind == ExprKind::kIn || leaf.kind == ExprKind::kLike ||
      leaf.kind == ExprKind::kBetween || leaf.kind == ExprKind::kExists) {
    return leaf.negated;
  }
  return false;
}

bool leaf_is_like(const Expr& leaf) { return strip_not(&leaf)->kind == ExprKind::kLike; }

// Subqueries standing as operands of a condition.
int nested_in_leaf(const Expr& leaf) {
  const Expr* e = strip_not(&leaf);
  int n = 0;
  if (e->kind == ExprKind::kIn || e->kind == ExprKind::kExists) {
    if (e->subquery) ++n;
  }
  for (const auto& c : e->children) {
    if (c->kind == ExprKind::kSubquery) ++n;
  }
  return n;
}

bool is_plain_aggregate(const Expr& e) { return is_aggregate_call(e) && !e.is_windowed(); }

void collect_tables(const JoinClause& jc, int& tables, Conditions& on_conds) {
  for (const auto& t : jc.tables) {
    if (t.group) {
      collect_tables(*t.group, tables, on_conds);
    } else {
      ++tables;
    }
  }
  for (const auto& op : jc.ops) {
    if (!op.on) continue;
    Conditions c = conditions_of(op.on.get());
    on_conds.ors += c.ors;
    on_conds.connectors += c.connectors;
    on_conds.leaves.insert(on_conds.leaves.end(), c.leaves.begin(), c.leaves.end());
  }
}

}  // namespace

std::string to_string(Difficulty d) {
  switch (d) {
    case Difficulty::kEasy: return "easy";
    case Difficulty::kMedium: return "medium";
    case Difficulty::kHard: return "hard";
    case Difficulty::kExtraHard: return "extra_hard";
  }
  return "easy";
}

std::optional<Difficulty> difficulty_from_string(std::string_view s) {
  if (s == "easy") return Difficulty::kEasy;
  if (s == "medium") return Difficulty::kMedium;
  if (s == "hard") return Difficulty::kHard;
  if (s == "extra_hard" || s == "extra") return Difficulty::kExtraHard;
  return std::nullopt;
}

HardnessCounts hardness_counts(const SelectStmt& stmt) {
  const SelectCore& core = stmt.first;
  const bool compound = !stmt.compounds.empty();
  HardnessCounts c;

  // In the Spider parse tree a trailing ORDER BY / LIMIT of a compound query
  // belongs to its last operand, not to the top-level query.
  const bool has_order = !compound && !stmt.order_by.empty();
  const bool has_limit = !compound && stmt.limit != nullptr;

  int tables = 0;
  Conditions on_conds;
  if (core.from) collect_tables(*core.from, tables, on_conds);
  const Conditions where = conditions_of(core.where.get());
  const Conditions having = conditions_of(core.having.get());

  // count_component1
  if (core.where) ++c.component1;
  if (!core.group_by.empty()) ++c.component1;
  if (has_order) ++c.component1;
  if (has_limit) ++c.component1;
  if (tables > 0) c.component1 += tables - 1;
  c.component1 += on_conds.ors + where.ors + having.ors;
  for (const Conditions* group : std::initializer_list<const Conditions*>{&on_conds, &where, &having}) {
    for (const Expr* leaf : group->leaves) {
      if (leaf_is_like(*leaf)) ++c.component1;
    }
  }

  // count_component2
  for (const Conditions* group : std::initializer_list<const Conditions*>{&on_conds, &where, &having}) {
    for (const Expr* leaf : group->leaves) c.component2 += nested_in_leaf(*leaf);
  }
  if (compound) ++c.component2;
  c.component2 += static_cast<int>(stmt.ctes.size());

  // count_others
  int agg = 0;
  for (const auto& col : core.columns) {
    if (is_plain_aggregate(*col.expr)) ++agg;
  }
  for (const Expr* leaf : where.leaves) {
    if (leaf_negated(*leaf)) ++agg;
  }
  for (const auto& g : core.group_by) {
    if (is_plain_aggregate(*g)) ++agg;
  }
  if (has_order) {
    for (const auto& term : stmt.order_by) {
      const Expr& e = *term.expr;
      if (is_plain_aggregate(e)) {
        ++agg;
      } else if (e.kind == ExprKind::kBinary &&
                 (e.op == "+" || e.op == "-" || e.op == "*" || e.op == "/")) {
        for (const auto& side : e.children) {
          if (is_plain_aggregate(*side)) ++agg;
        }
      }
    }
  }
  for (const Expr* leaf : having.leaves) {
    if (leaf_negated(*leaf)) ++agg;
  }
  agg += having.connectors;

  if (agg > 1) ++c.others;
  if (core.columns.size() > 1) ++c.others;
  if (where.leaves.size() > 1) ++c.others;
  if (core.group_by.size() > 1) ++c.others;
  return c;
}

Difficulty classify_counts(const HardnessCounts& c) {
  const int c1 = c.component1;
  const int c2 = c.component2;
  const int o = c.others;
  if (c1 <= 1 && o == 0 && c2 == 0) return Difficulty::kEasy;
  if ((o <= 2 && c1 <= 1 && c2 == 0) || (c1 <= 2 && o < 2 && c2 == 0)) {
    return Difficulty::kMedium;
  }
  if ((o > 2 && c1 <= 2 && c2 == 0) || (c1 > 2 && c1 <= 3 && o <= 2 && c2 == 0) ||
      (c1 <= 1 && o == 0 && c2 <= 1)) {
    return Difficulty::kHard;
  }
  return Difficulty::kExtraHard;
}

Difficulty classify_components(const SelectStmt& stmt) {
  return classify_counts(hardness_counts(stmt));
}

Difficulty classify_components(std::string_view sql) {
  return classify_components(*parse_query(sql).stmt);
}

}  // namespace t2sf::sql
