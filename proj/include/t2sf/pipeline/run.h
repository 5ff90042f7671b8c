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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "t2sf/pipeline/record.h"
#include "t2sf/pipeline/stages.h"

namespace t2sf::pipeline {

struct Seed {
  std::string id;
  std::string sql;
  std::string db_id;
};

// One SQL per line, or JSON Lines objects with "sql" and optional "db_id"
// and "id". Blank lines are skipped. Missing ids become "seed-<n>" (n counts
// from 0 over non-blank lines) and missing db ids become `default_db_id`.
// Throws ConfigError on unreadable files or malformed JSON lines.
std::vector<Seed> load_seeds(const std::string& path, const std::string& default_db_id = "");

struct PipelineConfig {
  int n_candidates = 2;
  int question_k = 3;
  int ed_k = 8;
  int cot_attempts = 2;
  int values_per_prompt = 12;
  double temperature = kDefaultTemperature;
  std::optional<db::Millis> timeout;  // falls back to the connection default
  std::uint64_t rng_seed = 42;
  std::vector<StrategyKind> strategies;  // empty means all
  std::vector<StyleKind> styles;         // empty means all
  PromptTemplates templates = PromptTemplates::defaults();
  int jobs = 1;  // seeds processed concurrently

  // Throws ConfigError.
  void validate() const;
};

struct RunReport {
  std::uint64_t seeds = 0;
  std::uint64_t seeds_rejected = 0;  // seed did not execute, or augmentation failed
  std::uint64_t generated = 0;       // candidates after extraction and de-duplication
  std::uint64_t filtered = 0;        // candidates that passed the execution filter
  std::uint64_t question_ok = 0;
  std::uint64_t cot_ok = 0;
  std::uint64_t records = 0;
  std::vector<std::string> failures;  // "<seed id>: <reason>", in seed order

  bool operator==(const RunReport&) const = default;
};

nlohmann::ordered_json to_json(const RunReport& r);

using RecordSink = std::function<void(const AugmentedRecord&)>;

// Records reach `sink` in seed order, one call at a time, whatever `jobs` is.
// Per-record problems are counted in the report; configuration and database
// errors propagate. With a cycling mock script, byte-identical reruns need
// jobs == 1, since concurrent seeds would consume the script in another order.
RunReport run_pipeline(const std::vector<Seed>& seeds, const PipelineConfig& config,
                       llm::LlmClient& llm, db::DatabaseManager& db, db::ConnectionHandle handle,
                       const RecordSink& sink);

// Truncates `output_path` and appends one JSON line per record.
RunReport run_pipeline_to_file(const std::vector<Seed>& seeds, const PipelineConfig& config,
                               llm::LlmClient& llm, db::DatabaseManager& db,
                               db::ConnectionHandle handle, const std::string& output_path);

// The four prompts as they would be rendered for `seed` without calling a
// model: the seed SQL stands in for s_aug and a placeholder for the question.
struct DryRunPrompts {
  std::string aug;
  std::string nl;
  std::string cot;
  std::string task;
};
DryRunPrompts dry_run_prompts(const Seed& seed, const PipelineConfig& config,
                              db::DatabaseManager& db, db::ConnectionHandle handle);

}  // namespace t2sf::pipeline
