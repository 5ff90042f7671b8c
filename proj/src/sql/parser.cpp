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

#include "t2sf/sql/parser.h"

#include <utility>

#include "t2sf/common/strings.h"

namespace t2sf::sql {
namespace {

TokenRole default_role(const Token& t) {
  switch (t.type) {
    case TokenType::kKeyword: return TokenRole::kKeyword;
    case TokenType::kIdentifier: return TokenRole::kIdentifier;
    case TokenType::kString:
    case TokenType::kNumber:
    case TokenType::kBlob:
    case TokenType::kParameter: return TokenRole::kLiteral;
    case TokenType::kPlaceholder: return TokenRole::kPlaceholder;
    case TokenType::kOperator: return TokenRole::kOperator;
    case TokenType::kPunct: return TokenRole::kPunct;
    case TokenType::kEnd: return TokenRole::kEnd;
  }
  return TokenRole::kPunct;
}

ExprPtr make_expr(ExprKind kind, std::string op = {}) {
  auto e = std::make_unique<Expr>();
  e->kind = kind;
  e->op = std::move(op);
  return e;
}

ExprPtr make_binary(std::string op, ExprPtr lhs, ExprPtr rhs) {
  auto e = make_expr(ExprKind::kBinary, std::move(op));
  e->children.push_back(std::move(lhs));
  e->children.push_back(std::move(rhs));
  return e;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
    roles_.reserve(tokens_.size());
    for (const auto& t : tokens_) roles_.push_back(default_role(t));
  }

  ParsedQuery run() {
    if (!starts_query()) fail("expected SELECT, WITH or VALUES");
    auto stmt = parse_select_stmt();
    if (peek().is_punct(';')) advance();
    if (peek().type != TokenType::kEnd) fail("unexpected token '" + peek().text + "'");
    return ParsedQuery{std::move(stmt), std::move(tokens_), std::move(roles_)};
  }

 private:
  // ---- token helpers -------------------------------------------------------
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().offset); }

  bool accept_keyword(std::string_view kw) {
    if (peek().is_keyword(kw)) {
      advance();
      return true;
    }
    return false;
  }
  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) fail("expected " + std::string(kw));
  }
  bool accept_punct(char c) {
    if (peek().is_punct(c)) {
      advance();
      return true;
    }
    return false;
  }
  void expect_punct(char c) {
    if (!accept_punct(c)) fail(std::string("expected '") + c + "'");
  }
  bool starts_query(std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.is_keyword("SELECT") || t.is_keyword("WITH") || t.is_keyword("VALUES");
  }

  // Identifier-like token usable as a name: identifiers, the mask
  // placeholder and keywords SQLite accepts as names.
  bool at_name(std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.type == TokenType::kIdentifier || t.type == TokenType::kPlaceholder ||
           (t.type == TokenType::kKeyword && is_fallback_keyword(t.text));
  }
  std::string take_name(TokenRole role = TokenRole::kIdentifier) {
    if (!at_name()) fail("expected a name, got '" + peek().text + "'");
    roles_[pos_] = peek().type == TokenType::kPlaceholder ? TokenRole::kPlaceholder : role;
    return advance().text;
  }

  // [AS] alias. Without AS only plain identifiers, placeholders or strings.
  std::string parse_alias() {
    if (accept_keyword("AS")) {
      if (peek().type == TokenType::kString) {
        roles_[pos_] = TokenRole::kIdentifier;
        return advance().text;
      }
      return take_name();
    }
    if (peek().type == TokenType::kIdentifier || peek().type == TokenType::kPlaceholder) {
      return take_name();
    }
    return {};
  }

  // ---- statements ----------------------------------------------------------
  std::unique_ptr<SelectStmt> parse_select_stmt() {
    auto stmt = std::make_unique<SelectStmt>();
    if (accept_keyword("WITH")) {
      stmt->recursive = accept_keyword("RECURSIVE");
      do {
        CommonTableExpr cte;
        cte.name = take_name();
        if (accept_punct('(')) {
          do {
            cte.columns.push_back(take_name());
          } while (accept_punct(','));
          expect_punct(')');
        }
        expect_keyword("AS");
        if (peek().is_keyword("NOT") && peek(1).is_keyword("MATERIALIZED")) {
          advance();
          advance();
        } else {
          accept_keyword("MATERIALIZED");
        }
        expect_punct('(');
        cte.body = parse_select_stmt();
        expect_punct(')');
        stmt->ctes.push_back(std::move(cte));
      } while (accept_punct(','));
    }
    stmt->first = parse_core();
    while (true) {
      CompoundOp op;
      if (accept_keyword("UNION")) {
        op = accept_keyword("ALL") ? CompoundOp::kUnionAll : CompoundOp::kUnion;
      } else if (accept_keyword("INTERSECT")) {
        op = CompoundOp::kIntersect;
      } else if (accept_keyword("EXCEPT")) {
        op = CompoundOp::kExcept;
      } else {
        break;
      }
      stmt->compounds.push_back(CompoundTerm{op, parse_core()});
    }
    if (accept_keyword("ORDER")) {
      expect_keyword("BY");
      stmt->order_by = parse_ordering_terms();
    }
    if (accept_keyword("LIMIT")) {
      stmt->limit = parse_expr();
      if (accept_keyword("OFFSET")) {
        stmt->offset = parse_expr();
      } else if (accept_punct(',')) {
        // LIMIT offset, count
        stmt->offset = std::move(stmt->limit);
        stmt->limit = parse_expr();
      }
    }
    return stmt;
  }

  SelectCore parse_core() {
    SelectCore core;
    if (accept_keyword("VALUES")) {
      do {
        expect_punct('(');
        std::vector<ExprPtr> row;
        do {
          row.push_back(parse_expr());
        } while (accept_punct(','));
        expect_punct(')');
        core.values.push_back(std::move(row));
      } while (accept_punct(','));
      return core;
    }
    expect_keyword("SELECT");
    if (accept_keyword("DISTINCT")) {
      core.distinct = true;
    } else {
      accept_keyword("ALL");
    }
    do {
      core.columns.push_back(parse_result_column());
    } while (accept_punct(','));
    if (accept_keyword("FROM")) core.from = parse_join_clause();
    if (accept_keyword("WHERE")) core.where = parse_expr();
    if (accept_keyword("GROUP")) {
      expect_keyword("BY");
      do {
        core.group_by.push_back(parse_expr());
      } while (accept_punct(','));
    }
    if (accept_keyword("HAVING")) core.having = parse_expr();
    if (accept_keyword("WINDOW")) {
      do {
        NamedWindow w;
        w.name = take_name();
        expect_keyword("AS");
        w.spec = parse_window_spec();
        core.windows.push_back(std::move(w));
      } while (accept_punct(','));
    }
    return core;
  }

  ResultColumn parse_result_column() {
    ResultColumn rc;
    if (peek().is_operator("*")) {
      advance();
      rc.expr = make_expr(ExprKind::kStar, "*");
      return rc;
    }
    if (at_name() && peek(1).is_punct('.') && peek(2).is_operator("*")) {
      auto star = make_expr(ExprKind::kStar, "*");
      star->qualifiers.push_back(take_name());
      advance();
      advance();
      rc.expr = std::move(star);
      return rc;
    }
    rc.expr = parse_expr();
    rc.alias = parse_alias();
    return rc;
  }

  std::vector<OrderingTerm> parse_ordering_terms() {
    std::vector<OrderingTerm> terms;
    do {
      OrderingTerm t;
      t.expr = parse_expr();
      if (accept_keyword("DESC")) {
        t.descending = true;
      } else {
        accept_keyword("ASC");
      }
      if (accept_keyword("NULLS")) {
        if (!accept_keyword("FIRST")) expect_keyword("LAST");
      }
      terms.push_back(std::move(t));
    } while (accept_punct(','));
    return terms;
  }

  // ---- FROM ----------------------------------------------------------------
  JoinClause parse_join_clause() {
    JoinClause jc;
    jc.tables.push_back(parse_table_ref());
    while (true) {
      JoinOp op;
      if (accept_punct(',')) {
        op.comma = true;
      } else {
        op.natural = accept_keyword("NATURAL");
        if (accept_keyword("LEFT")) {
          op.kind = "LEFT";
          accept_keyword("OUTER");
        } else if (accept_keyword("RIGHT")) {
          op.kind = "RIGHT";
          accept_keyword("OUTER");
        } else if (accept_keyword("FULL")) {
          op.kind = "FULL";
          accept_keyword("OUTER");
        } else if (accept_keyword("INNER")) {
          op.kind = "INNER";
        } else if (accept_keyword("CROSS")) {
          op.kind = "CROSS";
        }
        if (!accept_keyword("JOIN")) {
          if (op.natural || !op.kind.empty()) fail("expected JOIN");
          break;
        }
      }
      jc.tables.push_back(parse_table_ref());
      if (accept_keyword("ON")) {
        op.on = parse_expr();
      } else if (accept_keyword("USING")) {
        expect_punct('(');
        do {
          op.using_columns.push_back(take_name());
        } while (accept_punct(','));
        expect_punct(')');
      }
      jc.ops.push_back(std::move(op));
    }
    return jc;
  }

  TableRef parse_table_ref() {
    TableRef ref;
    if (accept_punct('(')) {
      if (starts_query()) {
        ref.kind = TableRef::Kind::kSubquery;
        ref.subquery = parse_select_stmt();
        expect_punct(')');
      } else {
        ref.kind = TableRef::Kind::kGroup;
        ref.group = std::make_unique<JoinClause>(parse_join_clause());
        expect_punct(')');
      }
      ref.alias = parse_alias();
      return ref;
    }
    ref.name.push_back(take_name());
    if (accept_punct('.')) ref.name.push_back(take_name());
    if (peek().is_punct('(')) {
      ref.kind = TableRef::Kind::kFunction;
      roles_[pos_ - 1] = TokenRole::kFunction;
      advance();
      if (!peek().is_punct(')')) {
        do {
          ref.args.push_back(parse_expr());
        } while (accept_punct(','));
      }
      expect_punct(')');
    }
    ref.alias = parse_alias();
    if (accept_keyword("INDEXED")) {
      expect_keyword("BY");
      take_name();
    } else if (peek().is_keyword("NOT") && peek(1).is_keyword("INDEXED")) {
      advance();
      advance();
    }
    return ref;
  }

  // ---- windows -------------------------------------------------------------
  WindowSpec parse_window_spec() {
    WindowSpec spec;
    expect_punct('(');
    if (at_name() && !peek().is_keyword("PARTITION") && !peek().is_keyword("RANGE") &&
        !peek().is_keyword("ROWS") && !peek().is_keyword("GROUPS")) {
      spec.base_name = take_name();
    }
    if (accept_keyword("PARTITION")) {
      expect_keyword("BY");
      do {
        spec.partition_by.push_back(parse_expr());
      } while (accept_punct(','));
    }
    if (accept_keyword("ORDER")) {
      expect_keyword("BY");
      spec.order_by = parse_ordering_terms();
    }
    if (accept_keyword("RANGE") || accept_keyword("ROWS") || accept_keyword("GROUPS")) {
      if (accept_keyword("BETWEEN")) {
        parse_frame_bound(spec);
        expect_keyword("AND");
        parse_frame_bound(spec);
      } else {
        parse_frame_bound(spec);
      }
      if (accept_keyword("EXCLUDE")) {
        if (accept_keyword("NO")) {
          expect_keyword("OTHERS");
        } else if (accept_keyword("CURRENT")) {
          expect_keyword("ROW");
        } else if (!accept_keyword("GROUP")) {
          expect_keyword("TIES");
        }
      }
    }
    expect_punct(')');
    return spec;
  }

  void parse_frame_bound(WindowSpec& spec) {
    if (accept_keyword("UNBOUNDED")) {
      if (!accept_keyword("PRECEDING")) expect_keyword("FOLLOWING");
      return;
    }
    if (accept_keyword("CURRENT")) {
      expect_keyword("ROW");
      return;
    }
    spec.frame_bounds.push_back(parse_additive());
    if (!accept_keyword("PRECEDING")) expect_keyword("FOLLOWING");
  }

  // ---- expressions ---------------------------------------------------------
  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_or() {
    auto lhs = parse_and();
    while (accept_keyword("OR")) lhs = make_binary("OR", std::move(lhs), parse_and());
    return lhs;
  }

  ExprPtr parse_and() {
    auto lhs = parse_not();
    while (accept_keyword("AND")) lhs = make_binary("AND", std::move(lhs), parse_not());
    return lhs;
  }

  ExprPtr parse_not() {
    if (peek().is_keyword("NOT") && !peek(1).is_keyword("EXISTS")) {
      advance();
      auto e = make_expr(ExprKind::kUnary, "NOT");
      e->children.push_back(parse_not());
      return e;
    }
    return parse_equality();
  }

  ExprPtr parse_equality() {
    auto lhs = parse_comparison();
    while (true) {
      const Token& t = peek();
      if (t.is_operator("=") || t.is_operator("==") || t.is_operator("!=") || t.is_operator("<>")) {
        std::string op = advance().text;
        lhs = make_binary(std::move(op), std::move(lhs), parse_comparison());
        continue;
      }
      if (t.is_keyword("IS")) {
        advance();
        std::string op = "IS";
        if (accept_keyword("NOT")) op = "IS NOT";
        if (accept_keyword("DISTINCT")) {
          expect_keyword("FROM");
          op += " DISTINCT FROM";
        }
        lhs = make_binary(std::move(op), std::move(lhs), parse_comparison());
        continue;
      }
      if (t.is_keyword("ISNULL") || t.is_keyword("NOTNULL")) {
        const bool negated = t.is_keyword("NOTNULL");
        advance();
        auto e = make_expr(ExprKind::kNullTest);
        e->negated = negated;
        e->children.push_back(std::move(lhs));
        lhs = std::move(e);
        continue;
      }
      bool negated = false;
      if (t.is_keyword("NOT")) {
        const Token& next = peek(1);
        if (next.is_keyword("NULL")) {
          advance();
          advance();
          auto e = make_expr(ExprKind::kNullTest);
          e->negated = true;
          e->children.push_back(std::move(lhs));
          lhs = std::move(e);
          continue;
        }
        if (!(next.is_keyword("IN") || next.is_keyword("LIKE") || next.is_keyword("GLOB") ||
              next.is_keyword("REGEXP") || next.is_keyword("MATCH") || next.is_keyword("BETWEEN"))) {
          break;
        }
        advance();
        negated = true;
      }
      const Token& k = peek();
      if (k.is_keyword("IN")) {
        advance();
        lhs = parse_in_rest(std::move(lhs), negated);
      } else if (k.is_keyword("LIKE") || k.is_keyword("GLOB") || k.is_keyword("REGEXP") ||
                 k.is_keyword("MATCH")) {
        auto e = make_expr(ExprKind::kLike, advance().text);
        e->negated = negated;
        e->children.push_back(std::move(lhs));
        e->children.push_back(parse_comparison());
        if (accept_keyword("ESCAPE")) e->children.push_back(parse_comparison());
        lhs = std::move(e);
      } else if (k.is_keyword("BETWEEN")) {
        advance();
        auto e = make_expr(ExprKind::kBetween);
        e->negated = negated;
        e->children.push_back(std::move(lhs));
        e->children.push_back(parse_comparison());
        expect_keyword("AND");
        e->children.push_back(parse_comparison());
        lhs = std::move(e);
      } else {
        break;
      }
    }
    return lhs;
  }

  ExprPtr parse_in_rest(ExprPtr lhs, bool negated) {
    auto e = make_expr(ExprKind::kIn);
    e->negated = negated;
    e->children.push_back(std::move(lhs));
    if (accept_punct('(')) {
      if (starts_query()) {
        e->subquery = parse_select_stmt();
      } else if (!peek().is_punct(')')) {
        do {
          e->children.push_back(parse_expr());
        } while (accept_punct(','));
      }
      expect_punct(')');
      return e;
    }
    // IN table / IN table-function(...)
    auto target = make_expr(ExprKind::kColumn, take_name());
    if (accept_punct('.')) {
      target->qualifiers.push_back(target->op);
      target->op = take_name();
    }
    e->children.push_back(std::move(target));
    return e;
  }

  ExprPtr parse_comparison() {
    auto lhs = parse_bitwise();
    while (peek().is_operator("<") || peek().is_operator("<=") || peek().is_operator(">") ||
           peek().is_operator(">=")) {
      std::string op = advance().text;
      lhs = make_binary(std::move(op), std::move(lhs), parse_bitwise());
    }
    return lhs;
  }

  ExprPtr parse_bitwise() {
    auto lhs = parse_additive();
    while (peek().is_operator("&") || peek().is_operator("|") || peek().is_operator("<<") ||
           peek().is_operator(">>")) {
      std::string op = advance().text;
      lhs = make_binary(std::move(op), std::move(lhs), parse_additive());
    }
    return lhs;
  }

  ExprPtr parse_additive() {
    auto lhs = parse_multiplicative();
    while (peek().is_operator("+") || peek().is_operator("-")) {
      std::string op = advance().text;
      lhs = make_binary(std::move(op), std::move(lhs), parse_multiplicative());
    }
    return lhs;
  }

  ExprPtr parse_multiplicative() {
    auto lhs = parse_concat();
    while (peek().is_operator("*") || peek().is_operator("/") || peek().is_operator("%")) {
      std::string op = advance().text;
      lhs = make_binary(std::move(op), std::move(lhs), parse_concat());
    }
    return lhs;
  }

  ExprPtr parse_concat() {
    auto lhs = parse_unary();
    while (peek().is_operator("||") || peek().is_operator("->") || peek().is_operator("->>")) {
      std::string op = advance().text;
      lhs = make_binary(std::move(op), std::move(lhs), parse_unary());
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (peek().is_operator("-") || peek().is_operator("+") || peek().is_operator("~")) {
      auto e = make_expr(ExprKind::kUnary, advance().text);
      e->children.push_back(parse_unary());
      return e;
    }
    auto e = parse_primary();
    while (accept_keyword("COLLATE")) {
      auto c = make_expr(ExprKind::kCollate, take_name(TokenRole::kTypeName));
      c->children.push_back(std::move(e));
      e = std::move(c);
    }
    return e;
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    switch (t.type) {
      case TokenType::kNumber:
      case TokenType::kString:
      case TokenType::kBlob:
        return make_expr(ExprKind::kLiteral, advance().text);
      case TokenType::kParameter:
        return make_expr(ExprKind::kParameter, advance().text);
      case TokenType::kPunct:
        if (t.is_punct('(')) return parse_parenthesized();
        break;
      case TokenType::kKeyword:
        if (t.is_keyword("NULL") || t.is_keyword("TRUE") || t.is_keyword("FALSE") ||
            t.is_keyword("CURRENT_DATE") || t.is_keyword("CURRENT_TIME") ||
            t.is_keyword("CURRENT_TIMESTAMP")) {
          return make_expr(ExprKind::kLiteral, advance().text);
        }
        if (t.is_keyword("CASE")) return parse_case();
        if (t.is_keyword("CAST")) return parse_cast();
        if (t.is_keyword("EXISTS") || t.is_keyword("NOT")) return parse_exists();
        if (is_fallback_keyword(t.text)) return parse_name_expr();
        break;
      case TokenType::kIdentifier:
      case TokenType::kPlaceholder:
        return parse_name_expr();
      default:
        break;
    }
    if (t.type == TokenType::kEnd) fail("unexpected end of input");
    fail("unexpected token '" + t.text + "'");
  }

  ExprPtr parse_parenthesized() {
    expect_punct('(');
    if (starts_query()) {
      auto e = make_expr(ExprKind::kSubquery);
      e->subquery = parse_select_stmt();
      expect_punct(')');
      return e;
    }
    auto first = parse_expr();
    if (accept_punct(')')) return first;
    auto row = make_expr(ExprKind::kRow);
    row->children.push_back(std::move(first));
    while (accept_punct(',')) row->children.push_back(parse_expr());
    expect_punct(')');
    return row;
  }

  ExprPtr parse_exists() {
    auto e = make_expr(ExprKind::kExists);
    if (accept_keyword("NOT")) e->negated = true;
    expect_keyword("EXISTS");
    expect_punct('(');
    if (!starts_query()) fail("expected subquery after EXISTS");
    e->subquery = parse_select_stmt();
    expect_punct(')');
    return e;
  }

  ExprPtr parse_case() {
    expect_keyword("CASE");
    auto e = make_expr(ExprKind::kCase);
    if (!peek().is_keyword("WHEN")) {
      e->has_operand = true;
      e->children.push_back(parse_expr());
    }
    if (!peek().is_keyword("WHEN")) fail("expected WHEN");
    while (accept_keyword("WHEN")) {
      e->children.push_back(parse_expr());
      expect_keyword("THEN");
      e->children.push_back(parse_expr());
    }
    if (accept_keyword("ELSE")) {
      e->has_else = true;
      e->children.push_back(parse_expr());
    }
    expect_keyword("END");
    return e;
  }

  ExprPtr parse_cast() {
    expect_keyword("CAST");
    expect_punct('(');
    auto inner = parse_expr();
    expect_keyword("AS");
    auto e = make_expr(ExprKind::kCast, parse_type_name());
    e->children.push_back(std::move(inner));
    expect_punct(')');
    return e;
  }

  std::string parse_type_name() {
    std::string name;
    while (at_name()) {
      if (!name.empty()) name += ' ';
      name += to_upper(take_name(TokenRole::kTypeName));
    }
    if (name.empty()) fail("expected type name");
    if (accept_punct('(')) {
      name += '(';
      do {
        if (peek().is_operator("-") || peek().is_operator("+")) name += advance().text;
        if (peek().type != TokenType::kNumber) fail("expected type size");
        roles_[pos_] = TokenRole::kTypeName;
        name += advance().text;
      } while (accept_punct(',') && (name += ',', true));
      expect_punct(')');
      name += ')';
    }
    return name;
  }

  ExprPtr parse_name_expr() {
    if (peek(1).is_punct('(') && peek().type != TokenType::kPlaceholder) {
      return parse_function();
    }
    std::vector<std::string> parts;
    parts.push_back(take_name());
    while (peek().is_punct('.') && (at_name(1) || peek(1).is_operator("*"))) {
      advance();
      if (peek().is_operator("*")) {
        // tbl.* only valid as a result column; reached here via COUNT(t.*)
        advance();
        auto star = make_expr(ExprKind::kStar, "*");
        star->qualifiers = std::move(parts);
        return star;
      }
      parts.push_back(take_name());
    }
    auto e = make_expr(ExprKind::kColumn, parts.back());
    parts.pop_back();
    e->qualifiers = std::move(parts);
    return e;
  }

  ExprPtr parse_function() {
    roles_[pos_] = TokenRole::kFunction;
    auto e = make_expr(ExprKind::kFunction, to_upper(advance().text));
    expect_punct('(');
    if (peek().is_operator("*")) {
      advance();
      e->children.push_back(make_expr(ExprKind::kStar, "*"));
    } else if (!peek().is_punct(')')) {
      if (accept_keyword("DISTINCT")) {
        e->distinct = true;
      } else {
        accept_keyword("ALL");
      }
      do {
        e->children.push_back(parse_expr());
      } while (accept_punct(','));
      if (accept_keyword("ORDER")) {
        expect_keyword("BY");
        e->arg_order_by = parse_ordering_terms();
      }
    }
    expect_punct(')');
    if (accept_keyword("FILTER")) {
      expect_punct('(');
      expect_keyword("WHERE");
      e->filter = parse_expr();
      expect_punct(')');
    }
    if (accept_keyword("OVER")) {
      if (peek().is_punct('(')) {
        e->over = std::make_unique<WindowSpec>(parse_window_spec());
      } else {
        e->over_name = take_name();
      }
    }
    return e;
  }

  std::vector<Token> tokens_;
  std::vector<TokenRole> roles_;
  std::size_t pos_ = 0;
};

}  // namespace

ParsedQuery parse_query(std::string_view sql, std::string_view mask_token) {
  Parser parser(tokenize(sql, mask_token));
  return parser.run();
}

}  // namespace t2sf::sql
