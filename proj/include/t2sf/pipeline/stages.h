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

#include <optional>
#include <string>
#include <vector>

#include "t2sf/db/database_manager.h"
#include "t2sf/llm/client.h"
#include "t2sf/pipeline/templates.h"
#include "t2sf/retrieval/model.h"

namespace t2sf::pipeline {

inline constexpr double kDefaultTemperature = 0.8;

// A record could not be completed (no usable question, for example).
class GenerationFailure : public Error {
 public:
  using Error::Error;
};

// Up to n_candidates SQL texts pulled from one request with n = n_candidates.
// Copies of the seed and of earlier candidates (whitespace-insensitive) are
// dropped. LLM errors propagate.
std::vector<std::string> augment_sql(const std::string& seed_sql,
                                     const AugmentationStrategy& strategy,
                                     const std::string& schema_ddl,
                                     const std::vector<db::SampledValue>& values,
                                     llm::LlmClient& llm, int n_candidates,
                                     const PromptTemplates& templates = PromptTemplates::defaults(),
                                     double temperature = kDefaultTemperature);

// True when the text is a single statement that only reads.
bool is_read_only_query(const std::string& sql);

// Keeps, in order, the candidates that are read-only and execute successfully
// within the timeout.
std::vector<std::string> execution_filter(const std::vector<std::string>& candidates,
                                          db::DatabaseManager& db, db::ConnectionHandle handle,
                                          std::optional<db::Millis> timeout = std::nullopt,
                                          int parallelism = 1);

struct QuestionCandidate {
  std::string question;  // empty when the generation failed
  StyleKind style;
};

struct QuestionChoice {
  std::string question;
  StyleKind style;
  std::size_t index = 0;
  std::vector<QuestionCandidate> candidates;
};

// Index with the highest mean cosine similarity to the other vectors; ties go
// to the lowest index. A single vector wins by default.
std::size_t most_central(const std::vector<retrieval::Vector>& embeddings);

// Embeds raw (unmasked) question text with the document role.
retrieval::Vector embed_question(const retrieval::RetrieverModel& embedder, const std::string& q);

// Draws k styles from rng, then generates one question per style. Failed or
// blank generations are left out of the selection. Throws GenerationFailure
// when none is usable.
QuestionChoice generate_questions(const std::string& s_aug, const std::string& schema_ddl, int k,
                                  llm::LlmClient& llm, Rng& rng,
                                  const retrieval::RetrieverModel& embedder,
                                  const PromptTemplates& templates = PromptTemplates::defaults(),
                                  const std::vector<StyleKind>& allowed_styles = {},
                                  double temperature = kDefaultTemperature);

// True when `candidate` returns the same result as `reference`. The
// reference's top-level ORDER BY decides whether row order matters.
bool execution_match(db::DatabaseManager& db, db::ConnectionHandle handle,
                     const std::string& reference, const std::string& candidate,
                     std::optional<db::Millis> timeout = std::nullopt);

// Returns the first of up to `attempts` generations whose final SQL matches
// s_aug by execution. LLM errors propagate.
std::optional<std::string> generate_cot(const std::string& schema_ddl, const std::string& q,
                                        const std::string& s_aug, llm::LlmClient& llm,
                                        db::DatabaseManager& db, db::ConnectionHandle handle,
                                        const PromptTemplates& templates = PromptTemplates::defaults(),
                                        int attempts = 2, std::optional<db::Millis> timeout = std::nullopt,
                                        double temperature = kDefaultTemperature);

// 1 - n/k over k samples of the task prompt. A failed request, a missing
// completion or a completion without matching SQL counts as a miss.
double execution_difficulty(const std::string& p, const std::string& s_ref, llm::LlmClient& llm,
                            db::DatabaseManager& db, db::ConnectionHandle handle, int k = 8,
                            std::optional<db::Millis> timeout = std::nullopt,
                            double temperature = kDefaultTemperature);

}  // namespace t2sf::pipeline
