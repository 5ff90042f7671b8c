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

#include "t2sf/sql/masking.h"

#include <algorithm>
#include <cctype>

#include "t2sf/common/strings.h"
#include "t2sf/db/schema.h"
#include "t2sf/sql/parser.h"

namespace t2sf::sql {
namespace {

bool glue_left(const Token& t) {
  return t.is_punct(',') || t.is_punct(')') || t.is_punct('.') || t.is_punct(';');
}

bool glue_right(const Token& t, TokenRole role, const Token& next) {
  if (t.is_punct('(') || t.is_punct('.')) return true;
  return next.is_punct('(') && (role == TokenRole::kFunction || role == TokenRole::kTypeName);
}

// ---- question masking ------------------------------------------------------

enum class SegKind { kWord, kNumber, kQuoted, kMask, kOther };

struct Segment {
  SegKind kind;
  std::string text;
};

bool is_alnum(unsigned char c) { return std::isalnum(c) != 0 || c >= 0x80; }

struct QuotePair {
  std::string_view open;
  std::string_view close;
};
constexpr QuotePair kQuotes[] = {
    {"\"", "\""}, {"'", "'"}, {"\xE2\x80\x9C", "\xE2\x80\x9D"}, {"\xE2\x80\x98", "\xE2\x80\x99"}};

std::vector<Segment> segment_question(std::string_view q, std::string_view mask_token) {
  std::vector<Segment> segs;
  std::size_t i = 0;
  const std::size_t n = q.size();
  auto push_other = [&segs](std::string_view s) {
    if (!segs.empty() && segs.back().kind == SegKind::kOther) {
      segs.back().text += s;
    } else {
      segs.push_back({SegKind::kOther, std::string(s)});
    }
  };
  while (i < n) {
    if (!mask_token.empty() && q.substr(i, mask_token.size()) == mask_token) {
      segs.push_back({SegKind::kMask, std::string(mask_token)});
      i += mask_token.size();
      continue;
    }
    bool quoted = false;
    for (const auto& qp : kQuotes) {
      if (q.substr(i, qp.open.size()) != qp.open) continue;
      // An apostrophe inside a word ("singer's") is not a quote.
      if (qp.open == "'" && i > 0 && is_alnum(static_cast<unsigned char>(q[i - 1]))) continue;
      std::size_t search = i + qp.open.size();
      while (true) {
        const auto close = q.find(qp.close, search);
        if (close == std::string_view::npos) break;
        const std::size_t after = close + qp.close.size();
        if (after < n && is_alnum(static_cast<unsigned char>(q[after])) && qp.close == "'") {
          search = after;
          continue;
        }
        if (close > i + qp.open.size()) {
          segs.push_back({SegKind::kQuoted, std::string(q.substr(i, after - i))});
          i = after;
          quoted = true;
        }
        break;
      }
      if (quoted) break;
    }
    if (quoted) continue;
    const unsigned char c = static_cast<unsigned char>(q[i]);
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < n) {
        const unsigned char d = static_cast<unsigned char>(q[j]);
        if (std::isdigit(d)) {
          ++j;
        } else if ((d == '.' || d == ',') && j + 1 < n &&
                   std::isdigit(static_cast<unsigned char>(q[j + 1]))) {
          j += 2;
        } else {
          break;
        }
      }
      if (j < n && is_alnum(static_cast<unsigned char>(q[j]))) {
        // Mixed token like "1st" or "2b": a word.
        while (j < n && is_alnum(static_cast<unsigned char>(q[j]))) ++j;
        segs.push_back({SegKind::kWord, std::string(q.substr(i, j - i))});
      } else {
        segs.push_back({SegKind::kNumber, std::string(q.substr(i, j - i))});
      }
      i = j;
      continue;
    }
    if (is_alnum(c)) {
      std::size_t j = i;
      while (j < n && is_alnum(static_cast<unsigned char>(q[j]))) ++j;
      segs.push_back({SegKind::kWord, std::string(q.substr(i, j - i))});
      i = j;
      continue;
    }
    push_other(q.substr(i, 1));
    ++i;
  }
  return segs;
}

std::vector<std::string> split_words(std::string_view name) {
  std::vector<std::string> words;
  std::string cur;
  for (char ch : name) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_alnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      words.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool plural_of(std::string_view plural, std::string_view singular) {
  if (plural.size() == singular.size() + 1 && ends_with(plural, "s") &&
      plural.substr(0, singular.size()) == singular) {
    return true;
  }
  if (plural.size() == singular.size() + 2 && ends_with(plural, "es") &&
      plural.substr(0, singular.size()) == singular) {
    return true;
  }
  return ends_with(singular, "y") && ends_with(plural, "ies") &&
         plural.size() == singular.size() + 2 &&
         plural.substr(0, singular.size() - 1) == singular.substr(0, singular.size() - 1);
}

bool word_matches(std::string_view word_lower, std::string_view name_word) {
  return word_lower == name_word || plural_of(word_lower, name_word) ||
         plural_of(name_word, word_lower);
}

bool is_separator(const Segment& s) {
  if (s.kind != SegKind::kOther) return false;
  return std::all_of(s.text.begin(), s.text.end(), [](char c) {
    return c == '_' || std::isspace(static_cast<unsigned char>(c));
  });
}

}  // namespace

MaskedText mask_sql(std::string_view sql, std::string_view mask_token) {
  const ParsedQuery parsed = parse_query(sql, mask_token);
  std::size_t last = parsed.tokens.size() - 1;  // kEnd
  if (last > 0 && parsed.tokens[last - 1].is_punct(';')) --last;

  std::string out;
  for (std::size_t i = 0; i < last; ++i) {
    const Token& t = parsed.tokens[i];
    const TokenRole role = parsed.roles[i];
    if (i > 0) {
      const Token& prev = parsed.tokens[i - 1];
      if (!glue_left(t) && !glue_right(prev, parsed.roles[i - 1], t)) out.push_back(' ');
    }
    switch (role) {
      case TokenRole::kIdentifier:
      case TokenRole::kLiteral:
      case TokenRole::kPlaceholder:
        out += mask_token;
        break;
      case TokenRole::kFunction:
      case TokenRole::kTypeName:
        out += to_upper(t.text);
        break;
      default:
        out += t.text;
        break;
    }
  }
  return MaskedText{std::move(out), std::string(mask_token)};
}

MaskedText mask_question(std::string_view question, const std::vector<std::string>& vocabulary,
                         std::string_view mask_token) {
  std::vector<std::vector<std::string>> phrases;
  for (const auto& v : vocabulary) {
    auto words = split_words(v);
    // One-letter names ("a", "t") would erase ordinary words.
    if (words.empty() || (words.size() == 1 && words[0].size() < 2)) continue;
    phrases.push_back(std::move(words));
  }
  // Longest phrases first so "song name" wins over "name".
  std::stable_sort(phrases.begin(), phrases.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });

  const std::vector<Segment> segs = segment_question(question, mask_token);
  std::string out;
  std::size_t i = 0;
  while (i < segs.size()) {
    const Segment& s = segs[i];
    if (s.kind == SegKind::kNumber || s.kind == SegKind::kQuoted || s.kind == SegKind::kMask) {
      out += mask_token;
      ++i;
      continue;
    }
    if (s.kind == SegKind::kWord) {
      std::size_t matched_end = 0;
      for (const auto& phrase : phrases) {
        std::size_t j = i;
        std::size_t w = 0;
        while (w < phrase.size() && j < segs.size() && segs[j].kind == SegKind::kWord &&
               word_matches(to_lower(segs[j].text), phrase[w])) {
          ++w;
          if (w == phrase.size()) break;
          if (j + 2 < segs.size() && is_separator(segs[j + 1])) {
            j += 2;
          } else {
            break;
          }
        }
        if (w == phrase.size()) {
          matched_end = j + 1;
          break;
        }
      }
      if (matched_end > 0) {
        out += mask_token;
        i = matched_end;
        continue;
      }
    }
    out += s.text;
    ++i;
  }
  return MaskedText{std::move(out), std::string(mask_token)};
}

MaskedText mask_question(std::string_view question, const db::SchemaMetadata& schema,
                         const std::vector<std::string>& extra_vocab, std::string_view mask_token) {
  std::vector<std::string> vocab = extra_vocab;
  for (const auto& table : schema.tables) {
    vocab.push_back(table.name);
    for (const auto& col : table.columns) vocab.push_back(col.name);
  }
  return mask_question(question, vocab, mask_token);
}

std::vector<std::string> sql_vocabulary(std::string_view sql) {
  const ParsedQuery parsed = parse_query(sql);
  std::vector<std::string> out;
  auto add = [&out](std::string v) {
    if (!v.empty() && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  };
  for (std::size_t i = 0; i < parsed.tokens.size(); ++i) {
    const Token& t = parsed.tokens[i];
    if (parsed.roles[i] == TokenRole::kIdentifier) {
      add(t.text);
    } else if (t.type == TokenType::kString && t.text.size() >= 2) {
      std::string inner;
      const std::string_view body = std::string_view(t.text).substr(1, t.text.size() - 2);
      for (std::size_t k = 0; k < body.size(); ++k) {
        inner.push_back(body[k]);
        if (body[k] == '\'' && k + 1 < body.size() && body[k + 1] == '\'') ++k;
      }
      add(std::move(inner));
    }
  }
  return out;
}

}  // namespace t2sf::sql
