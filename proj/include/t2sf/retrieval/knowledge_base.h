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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "t2sf/db/schema.h"
#include "t2sf/pipeline/record.h"
#include "t2sf/retrieval/model.h"
#include "t2sf/retrieval/trainer.h"

namespace t2sf::retrieval {

struct KnowledgeBaseEntry {
  std::int64_t id = 0;
  std::string q;
  std::string s;
  sql::MaskedText masked_q;
  sql::MaskedText masked_s;
  Vector e_q;
  Vector e_s;
  nlohmann::json source;  // provenance of the originating record
};

class VersionMismatchError : public Error {
 public:
  using Error::Error;
};

struct KnowledgeBase {
  std::uint64_t model_version = 0;
  std::vector<KnowledgeBaseEntry> entries;

  // JSON Lines, one entry per line, each tagged with model_version.
  void save(const std::string& path) const;
  static KnowledgeBase load(const std::string& path);
};

struct KbBuildReport {
  std::size_t added = 0;
  std::vector<std::pair<std::size_t, std::string>> skipped;  // input index, reason
};

KnowledgeBase build_kb(const std::vector<pipeline::AugmentedRecord>& records,
                       const RetrieverModel& model, KbBuildReport* report = nullptr);
KnowledgeBase build_kb(const std::vector<TrainingPair>& pairs, const RetrieverModel& model,
                       KbBuildReport* report = nullptr);

struct RetrievalHit {
  std::size_t index = 0;  // position in kb.entries
  std::int64_t id = 0;
  double similarity = 0;
};

// Ranks every entry by cosine(query embedding, e_s), descending, ties by id.
// Throws VersionMismatchError when the KB was built with another model.
std::vector<RetrievalHit> rank_masked_query(const KnowledgeBase& kb, const RetrieverModel& model,
                                            const sql::MaskedText& masked_query, std::size_t k);

std::vector<RetrievalHit> retrieve(const KnowledgeBase& kb, const RetrieverModel& model,
                                   const std::string& q_target, const db::SchemaMetadata& schema,
                                   std::size_t k);

// Ranks by the masked gold SQL instead of the question. Throws ParseError.
std::vector<RetrievalHit> upper_limit_retrieve(const KnowledgeBase& kb, const RetrieverModel& model,
                                               const std::string& gold_sql, std::size_t k);

}  // namespace t2sf::retrieval
