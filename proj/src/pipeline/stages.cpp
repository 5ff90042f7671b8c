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

#include "t2sf/pipeline/stages.h"

#include <set>
#include <stdexcept>

#include "t2sf/common/strings.h"
#include "t2sf/sql/extract.h"
#include "t2sf/sql/token.h"

namespace t2sf::pipeline {

std::vector<std::string> augment_sql(const std::string& seed_sql,
                                     const AugmentationStrategy& strategy,
                                     const std::string& schema_ddl,
                                     const std::vector<db::SampledValue>& values,
                                     llm::LlmClient& llm, int n_candidates,
                                     const PromptTemplates& templates, double temperature) {
  if (n_candidates < 1) throw std::invalid_argument("n_candidates must be at least 1");
  const std::string prompt = build_aug_prompt(templates, schema_ddl, values, strategy, seed_sql);
  const auto response = llm.generate(llm::user_request(prompt, n_candidates, temperature));

  std::set<std::string> seen = {normalize_sql_text(seed_sql)};
  std::vector<std::string> out;
  for (const auto& completion : response.completions) {
    if (static_cast<int>(out.size()) == n_candidates) break;
    auto sql = sql::extract_sql_from_text(completion);
    if (!sql) continue;
    if (!seen.insert(normalize_sql_text(*sql)).second) continue;
    out.push_back(std::move(*sql));
  }
  return out;
}

bool is_read_only_query(const std::string& sql) {
  static const std::set<std::string> kWriters = {"INSERT", "UPDATE", "DELETE", "DROP",
                                                 "CREATE", "ALTER",  "ATTACH", "DETACH",
                                                 "PRAGMA", "VACUUM", "REINDEX"};
  std::vector<sql::Token> tokens;
  try {
    tokens = sql::tokenize(sql);
  } catch (const sql::ParseError&) {
    return false;
  }
  if (tokens.empty() || tokens[0].type == sql::TokenType::kEnd) return false;
  const auto& first = tokens[0];
  if (!(first.is_keyword("SELECT") || first.is_keyword("WITH") || first.is_keyword("VALUES") ||
        first.is_punct('('))) {
    return false;
  }
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    const auto& t = tokens[i];
    if (t.is_punct(';')) {
      // Only trailing semicolons are allowed.
      for (std::size_t j = i + 1; j < tokens.size(); ++j) {
        if (tokens[j].type != sql::TokenType::kEnd && !tokens[j].is_punct(';')) return false;
      }
      break;
    }
    if ((t.type == sql::TokenType::kKeyword || t.type == sql::TokenType::kIdentifier) && !t.quoted) {
      const std::string word = to_upper(t.text);
      if (kWriters.count(word)) return false;
      if (word == "REPLACE" && tokens[i + 1].is_keyword("INTO")) return false;
    }
  }
  return true;
}

std::vector<std::string> execution_filter(const std::vector<std::string>& candidates,
                                          db::DatabaseManager& db, db::ConnectionHandle handle,
                                          std::optional<db::Millis> timeout, int parallelism) {
  std::vector<std::string> runnable;
  for (const auto& c : candidates) {
    if (is_read_only_query(c)) runnable.push_back(c);
  }
  const auto outcomes = db.batch_sql_execution(handle, runnable, timeout, parallelism);
  const db::Millis limit = timeout.value_or(db.config(handle).default_timeout);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < runnable.size(); ++i) {
    const auto* r = std::get_if<db::ExecutionResult>(&outcomes[i]);
    if (r && r->elapsed <= limit) out.push_back(runnable[i]);
  }
  return out;
}

std::size_t most_central(const std::vector<retrieval::Vector>& embeddings) {
  if (embeddings.empty()) throw std::invalid_argument("no embeddings to choose from");
  const std::size_t k = embeddings.size();
  if (k == 1) return 0;
  std::size_t best = 0;
  double best_mean = -2;
  for (std::size_t i = 0; i < k; ++i) {
    double sum = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (j != i) sum += retrieval::cosine_sim(embeddings[i], embeddings[j]);
    }
    const double mean = sum / static_cast<double>(k - 1);
    if (mean > best_mean) {
      best_mean = mean;
      best = i;
    }
  }
  return best;
}

retrieval::Vector embed_question(const retrieval::RetrieverModel& embedder, const std::string& q) {
  return embedder.embed(sql::MaskedText{q}, retrieval::EmbedRole::kDocument);
}

QuestionChoice generate_questions(const std::string& s_aug, const std::string& schema_ddl, int k,
                                  llm::LlmClient& llm, Rng& rng,
                                  const retrieval::RetrieverModel& embedder,
                                  const PromptTemplates& templates,
                                  const std::vector<StyleKind>& allowed_styles,
                                  double temperature) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  QuestionChoice choice;
  for (int i = 0; i < k; ++i) {
    choice.candidates.push_back({"", sample_style(rng, allowed_styles).kind});
  }
  std::vector<std::size_t> usable;
  std::vector<retrieval::Vector> embeddings;
  for (std::size_t i = 0; i < choice.candidates.size(); ++i) {
    auto& cand = choice.candidates[i];
    const std::string prompt = build_nl_prompt(templates, schema_ddl, style_info(cand.style), s_aug);
    try {
      const auto response = llm.generate(llm::user_request(prompt, 1, temperature));
      if (!response.completions.empty()) cand.question = std::string(trim(response.completions[0]));
    } catch (const llm::LlmError&) {
      cand.question.clear();
    }
    if (cand.question.empty()) continue;
    usable.push_back(i);
    embeddings.push_back(embed_question(embedder, cand.question));
  }
  if (usable.empty()) throw GenerationFailure("no usable question among " + std::to_string(k) + " candidates");
  choice.index = usable[most_central(embeddings)];
  choice.question = choice.candidates[choice.index].question;
  choice.style = choice.candidates[choice.index].style;
  return choice;
}

bool execution_match(db::DatabaseManager& db, db::ConnectionHandle handle,
                     const std::string& reference, const std::string& candidate,
                     std::optional<db::Millis> timeout) {
  if (!is_read_only_query(candidate)) return false;
  return db.batch_compare_sql(handle, {{reference, candidate}}, timeout).at(0).equal;
}

std::optional<std::string> generate_cot(const std::string& schema_ddl, const std::string& q,
                                        const std::string& s_aug, llm::LlmClient& llm,
                                        db::DatabaseManager& db, db::ConnectionHandle handle,
                                        const PromptTemplates& templates, int attempts,
                                        std::optional<db::Millis> timeout, double temperature) {
  const std::string prompt = build_cot_prompt(templates, schema_ddl, q, s_aug);
  for (int a = 0; a < attempts; ++a) {
    const auto response = llm.generate(llm::user_request(prompt, 1, temperature));
    if (response.completions.empty()) continue;
    const std::string& cot = response.completions[0];
    const auto sql = sql::extract_sql_from_text(cot);
    if (sql && execution_match(db, handle, s_aug, *sql, timeout)) return cot;
  }
  return std::nullopt;
}

double execution_difficulty(const std::string& p, const std::string& s_ref, llm::LlmClient& llm,
                            db::DatabaseManager& db, db::ConnectionHandle handle, int k,
                            std::optional<db::Millis> timeout, double temperature) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  std::vector<std::string> completions;
  try {
    completions = llm.generate(llm::user_request(p, k, temperature)).completions;
  } catch (const llm::LlmError&) {
    return 1.0;
  }
  if (static_cast<int>(completions.size()) > k) completions.resize(static_cast<std::size_t>(k));

  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& c : completions) {
    auto sql = sql::extract_sql_from_text(c);
    if (sql && is_read_only_query(*sql)) pairs.emplace_back(s_ref, std::move(*sql));
  }
  int n = 0;
  for (const auto& r : db.batch_compare_sql(handle, pairs, timeout)) n += r.equal ? 1 : 0;
  return 1.0 - static_cast<double>(n) / static_cast<double>(k);
}

}  // namespace t2sf::pipeline
