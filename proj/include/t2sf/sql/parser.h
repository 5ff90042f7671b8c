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
#include <string_view>
#include <vector>

#include "t2sf/sql/ast.h"
#include "t2sf/sql/token.h"

namespace t2sf::sql {

// How the parser used each token. Masking works from these roles.
enum class TokenRole {
  kKeyword,
  kIdentifier,  // table, column, alias, CTE or window name
  kFunction,
  kTypeName,
  kLiteral,     // string, number, blob, parameter
  kPlaceholder,
  kOperator,
  kPunct,
  kEnd,
};

struct ParsedQuery {
  std::unique_ptr<SelectStmt> stmt;
  std::vector<Token> tokens;
  std::vector<TokenRole> roles;  // parallel to tokens
};

// Parses one SQLite-dialect query statement (SELECT / VALUES, with optional
// CTEs, compound operators, window functions). One trailing semicolon is
// accepted. Anything else throws ParseError.
ParsedQuery parse_query(std::string_view sql, std::string_view mask_token = kDefaultMaskToken);

}  // namespace t2sf::sql
