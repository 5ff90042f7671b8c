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

#include "t2sf/sql/extract.h"

#include <cctype>

#include "t2sf/common/strings.h"

namespace t2sf::sql {
namespace {

std::string clean(std::string_view sql) {
  std::string_view s = trim(sql);
  while (!s.empty() && s.back() == ';') s = trim(s.substr(0, s.size() - 1));
  return std::string(s);
}

std::optional<std::string> last_fenced_sql(std::string_view text) {
  std::optional<std::string> found;
  std::size_t pos = 0;
  while (true) {
    const auto open = text.find("```", pos);
    if (open == std::string_view::npos) break;
    const auto eol = text.find('\n', open + 3);
    if (eol == std::string_view::npos) break;
    const auto close = text.find("```", eol + 1);
    if (close == std::string_view::npos) break;
    const std::string_view label = trim(text.substr(open + 3, eol - open - 3));
    if (iequals(label, "sql")) {
      std::string body = clean(text.substr(eol + 1, close - eol - 1));
      if (!body.empty()) found = std::move(body);
    }
    pos = close + 3;
  }
  return found;
}

bool word_at(std::string_view text, std::size_t i, std::string_view word) {
  if (!istarts_with(text.substr(i), word)) return false;
  const std::size_t end = i + word.size();
  return end >= text.size() || !(std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_');
}

// Offset of the next line whose first non-blank word is SELECT or WITH.
std::size_t next_statement_start(std::string_view text, std::size_t from) {
  std::size_t line = from;
  while (line < text.size()) {
    std::size_t i = line;
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    if (word_at(text, i, "SELECT") || word_at(text, i, "WITH")) return i;
    const auto nl = text.find('\n', line);
    if (nl == std::string_view::npos) break;
    line = nl + 1;
  }
  return std::string_view::npos;
}

std::size_t statement_end(std::string_view text, std::size_t start) {
  const auto semi = text.find(';', start);
  const auto blank = text.find("\n\n", start);
  std::size_t end = std::min(semi, blank);
  if (end == std::string_view::npos) end = text.size();
  return end;
}

}  // namespace

std::optional<std::string> extract_sql_from_text(std::string_view text) {
  if (auto fenced = last_fenced_sql(text)) return fenced;
  std::optional<std::string> found;
  std::size_t pos = 0;
  while (true) {
    const std::size_t start = next_statement_start(text, pos);
    if (start == std::string_view::npos) break;
    const std::size_t end = statement_end(text, start);
    std::string stmt = clean(text.substr(start, end - start));
    if (!stmt.empty()) found = std::move(stmt);
    if (end >= text.size()) break;
    pos = text.find('\n', end);
    if (pos == std::string_view::npos) break;
    ++pos;
  }
  return found;
}

}  // namespace t2sf::sql
