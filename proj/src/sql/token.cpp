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

#include <algorithm>
#include <array>
#include <cctype>

#include "t2sf/common/strings.h"
#include "t2sf/sql/token.h"

namespace t2sf::sql {
namespace {

// Sorted for binary search.
constexpr std::array<std::string_view, 87> kKeywords = {
    "ALL",        "ALTER",      "AND",       "AS",        "ASC",
    "BETWEEN",    "BY",         "CASE",      "CAST",      "COLLATE",
    "CREATE",     "CROSS",      "CURRENT",   "CURRENT_DATE", "CURRENT_TIME",
    "CURRENT_TIMESTAMP", "DELETE", "DESC",   "DISTINCT",  "DO",
    "DROP",       "ELSE",       "END",       "ESCAPE",    "EXCEPT",
    "EXCLUDE",    "EXISTS",     "FALSE",     "FILTER",    "FIRST",
    "FOLLOWING",  "FROM",       "FULL",      "GLOB",      "GROUP",
    "GROUPS",     "HAVING",     "IN",        "INDEXED",   "INNER",
    "INSERT",     "INTERSECT",  "INTO",      "IS",        "ISNULL",
    "JOIN",       "LAST",       "LEFT",      "LIKE",      "LIMIT",
    "MATCH",      "MATERIALIZED", "NATURAL", "NO",        "NOT",
    "NOTNULL",    "NULL",       "NULLS",     "OFFSET",    "ON",
    "OR",         "ORDER",      "OTHERS",    "OUTER",     "OVER",
    "PARTITION",  "PRECEDING",  "RANGE",     "RECURSIVE", "REGEXP",
    "RIGHT",      "ROW",        "ROWS",      "SELECT",    "SET",
    "THEN",       "TIES",       "TRUE",      "UNBOUNDED", "UNION",
    "UPDATE",     "USING",      "VALUES",    "WHEN",      "WHERE",
    "WINDOW",     "WITH",
};

constexpr std::array<std::string_view, 31> kFallback = {
    "ALTER", "CURRENT", "DELETE", "DO", "EXCLUDE",
    "FALSE", "FILTER", "FIRST", "FOLLOWING", "GROUPS",
    "INDEXED", "INSERT", "LAST", "MATCH", "MATERIALIZED",
    "NO", "NULLS", "OTHERS", "OVER", "PARTITION",
    "PRECEDING", "RANGE", "RECURSIVE", "ROW", "ROWS",
    "SET", "TIES", "TRUE", "UNBOUNDED", "UPDATE",
    "WINDOW",
};

bool in_sorted(std::string_view word, const auto& table) {
  return std::binary_search(table.begin(), table.end(), word);
}

bool is_ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool is_ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80; }

}  // namespace

bool is_keyword(std::string_view upper_word) { return in_sorted(upper_word, kKeywords); }

bool is_fallback_keyword(std::string_view upper_word) { return in_sorted(upper_word, kFallback); }

std::vector<Token> tokenize(std::string_view sql, std::string_view mask_token) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = sql.size();
  auto at = [&](std::size_t k) -> unsigned char { return k < n ? static_cast<unsigned char>(sql[k]) : 0; };

  while (i < n) {
    const unsigned char c = at(i);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c == '-' && at(i + 1) == '-') {
      while (i < n && sql[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && at(i + 1) == '*') {
      const auto end = sql.find("*/", i + 2);
      if (end == std::string_view::npos) throw ParseError("unterminated comment", i);
      i = end + 2;
      continue;
    }
    const std::size_t start = i;
    if (!mask_token.empty() && sql.substr(i, mask_token.size()) == mask_token) {
      tokens.push_back({TokenType::kPlaceholder, std::string(mask_token), start});
      i += mask_token.size();
      continue;
    }
    if ((c == 'x' || c == 'X') && at(i + 1) == '\'') {
      const auto end = sql.find('\'', i + 2);
      if (end == std::string_view::npos) throw ParseError("unterminated blob literal", i);
      tokens.push_back({TokenType::kBlob, std::string(sql.substr(i, end + 1 - i)), start});
      i = end + 1;
      continue;
    }
    if (is_ident_start(c)) {
      while (i < n && is_ident_char(at(i))) ++i;
      std::string word(sql.substr(start, i - start));
      std::string upper = to_upper(word);
      if (is_keyword(upper)) {
        tokens.push_back({TokenType::kKeyword, std::move(upper), start});
      } else {
        tokens.push_back({TokenType::kIdentifier, std::move(word), start});
      }
      continue;
    }
    if (std::isdigit(c) || (c == '.' && std::isdigit(at(i + 1)))) {
      if (c == '0' && (at(i + 1) == 'x' || at(i + 1) == 'X') && std::isxdigit(at(i + 2))) {
        i += 2;
        while (i < n && std::isxdigit(at(i))) ++i;
      } else {
        while (i < n && (std::isdigit(at(i)) || at(i) == '_')) ++i;
        if (at(i) == '.') {
          ++i;
          while (i < n && std::isdigit(at(i))) ++i;
        }
        if ((at(i) == 'e' || at(i) == 'E') &&
            (std::isdigit(at(i + 1)) ||
             ((at(i + 1) == '+' || at(i + 1) == '-') && std::isdigit(at(i + 2))))) {
          i += 2;
          while (i < n && std::isdigit(at(i))) ++i;
        }
      }
      if (is_ident_start(at(i))) throw ParseError("malformed number", start);
      tokens.push_back({TokenType::kNumber, std::string(sql.substr(start, i - start)), start});
      continue;
    }
    if (c == '\'') {
      ++i;
      while (true) {
        if (i >= n) throw ParseError("unterminated string literal", start);
        if (sql[i] == '\'') {
          if (at(i + 1) == '\'') {
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        ++i;
      }
      tokens.push_back({TokenType::kString, std::string(sql.substr(start, i - start)), start});
      continue;
    }
    if (c == '"' || c == '`' || c == '[') {
      const char close = c == '[' ? ']' : static_cast<char>(c);
      ++i;
      std::string name;
      while (true) {
        if (i >= n) throw ParseError("unterminated quoted identifier", start);
        if (sql[i] == close) {
          if (close != ']' && at(i + 1) == static_cast<unsigned char>(close)) {
            name.push_back(close);
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        name.push_back(sql[i++]);
      }
      Token t{TokenType::kIdentifier, std::move(name), start};
      t.quoted = true;
      tokens.push_back(std::move(t));
      continue;
    }
    if (c == '?' || c == ':' || c == '@' || c == '$') {
      ++i;
      while (i < n && is_ident_char(at(i))) ++i;
      tokens.push_back({TokenType::kParameter, std::string(sql.substr(start, i - start)), start});
      continue;
    }
    if (c == '(' || c == ')' || c == ',' || c == '.' || c == ';') {
      tokens.push_back({TokenType::kPunct, std::string(1, static_cast<char>(c)), start});
      ++i;
      continue;
    }
    static constexpr std::array<std::string_view, 9> kTwoChar = {"||", "<=", ">=", "<>", "!=",
                                                                 "==", "<<", ">>", "->"};
    const auto two = sql.substr(i, 2);
    if (std::find(kTwoChar.begin(), kTwoChar.end(), two) != kTwoChar.end()) {
      if (two == "->" && at(i + 2) == '>') {
        tokens.push_back({TokenType::kOperator, "->>", start});
        i += 3;
      } else {
        tokens.push_back({TokenType::kOperator, std::string(two), start});
        i += 2;
      }
      continue;
    }
    if (std::string_view("+-*/%<>=&|~").find(static_cast<char>(c)) != std::string_view::npos) {
      tokens.push_back({TokenType::kOperator, std::string(1, static_cast<char>(c)), start});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", start);
  }
  tokens.push_back({TokenType::kEnd, "", n});
  return tokens;
}

}  // namespace t2sf::sql
