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

#include <string>
#include <string_view>
#include <vector>

#include "t2sf/sql/token.h"

namespace t2sf::db {
struct SchemaMetadata;
}

namespace t2sf::sql {

// Text whose schema-dependent parts were replaced by `mask_token`.
struct MaskedText {
  std::string text;
  std::string mask_token = std::string(kDefaultMaskToken);

  bool operator==(const MaskedText&) const = default;
};

// Replaces every table/column/alias identifier and every string, numeric or
// blob literal with the mask token. Keywords, operators, function and type
// names are kept (upper-cased), so queries with the same parse shape mask to
// the same text. Throws ParseError.
MaskedText mask_sql(std::string_view sql, std::string_view mask_token = kDefaultMaskToken);

// Token-level masking of a natural-language question: words matching a table
// or column name (case-insensitive, `_` equal to a space, naive singular /
// plural), quoted spans and numbers become the mask token. `extra_vocab`
// entries are matched like schema names.
MaskedText mask_question(std::string_view question, const db::SchemaMetadata& schema,
                         const std::vector<std::string>& extra_vocab = {},
                         std::string_view mask_token = kDefaultMaskToken);

MaskedText mask_question(std::string_view question, const std::vector<std::string>& vocabulary,
                         std::string_view mask_token = kDefaultMaskToken);

// Identifier names and string-literal contents of a query, in first-seen order
// without repeats. Used to mask a question paired with that query.
std::vector<std::string> sql_vocabulary(std::string_view sql);

}  // namespace t2sf::sql
