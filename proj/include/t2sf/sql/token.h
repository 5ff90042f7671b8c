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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "t2sf/common/error.h"

namespace t2sf::sql {

inline constexpr std::string_view kDefaultMaskToken = "<mask>";

enum class TokenType {
  kKeyword,
  kIdentifier,    // bare or quoted ("x", `x`, [x])
  kString,        // '...'
  kNumber,
  kBlob,          // X'..'
  kParameter,     // ?, ?1, :name, @name, $name
  kPlaceholder,   // the mask token
  kOperator,
  kPunct,         // ( ) , . ;
  kEnd,
};

struct Token {
  TokenType type = TokenType::kEnd;
  std::string text;     // source spelling (keywords upper-cased)
  std::size_t offset = 0;
  bool quoted = false;  // identifier was quoted

  bool is_keyword(std::string_view kw) const { return type == TokenType::kKeyword && text == kw; }
  bool is_punct(char c) const {
    return type == TokenType::kPunct && text.size() == 1 && text[0] == c;
  }
  bool is_operator(std::string_view op) const { return type == TokenType::kOperator && text == op; }
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// True for words the lexer reports as keywords.
bool is_keyword(std::string_view upper_word);

// Keywords SQLite lets through as plain identifiers (column named "year",
// "first", "key", ...).
bool is_fallback_keyword(std::string_view upper_word);

// Splits SQL text into tokens; the final token is always kEnd. Comments are
// dropped. `mask_token` is recognized as a single placeholder token.
std::vector<Token> tokenize(std::string_view sql,
                            std::string_view mask_token = kDefaultMaskToken);

}  // namespace t2sf::sql
