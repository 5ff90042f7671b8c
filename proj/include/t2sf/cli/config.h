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

#include "t2sf/db/connector.h"
#include "t2sf/llm/client.h"
#include "t2sf/pipeline/run.h"
#include "t2sf/retrieval/trainer.h"

namespace t2sf::cli {

inline constexpr std::uint64_t kDefaultSeed = 42;

// Everything a command may need. Paths in a config file are resolved
// against the file's directory.
struct RunConfig {
  db::ConnectorConfig database;  // database.location is the file path

  llm::LlmSettings llm;

  pipeline::PipelineConfig pipeline;
  std::string seeds_path;
  std::string output_path;
  std::string report_path;
  std::string templates_path;
  std::string db_id;

  retrieval::TrainingConfig training;
  std::size_t feature_count = 0;  // 0 means the model default
  std::size_t dim = 0;
  std::string instruction;
  std::string train_data_path;
  std::string kb_path;
  std::string model_path;

  std::uint64_t seed = kDefaultSeed;
  int jobs = 1;
};

// Layout:
//   {"database": {"backend", "path", "timeout_ms", "max_connections"},
//    "llm": {"backend", "mock_script", "endpoint", "model", "api_key",
//            "replay_log", "max_attempts", "initial_backoff_ms",
//            "connect_timeout_ms", "read_timeout_ms"},
//    "pipeline": {"seeds", "output", "report", "templates", "db_id",
//                 "n_candidates", "question_k", "ed_k", "cot_attempts",
//                 "values_per_prompt", "temperature", "timeout_ms",
//                 "strategies", "styles"},
//    "retrieval": {"train_data", "kb", "model", "temperature", "negatives",
//                  "learning_rate", "epochs", "batch_size",
//                  "validation_size", "feature_count", "dim", "instruction"},
//    "seed": 42, "jobs": 1}
// Every section and key is optional; unknown keys are rejected.
// Throws ConfigError.
RunConfig load_run_config(const std::string& path);

// Throws ConfigError naming `what` when `path` is empty or missing.
void require_file(const std::string& path, const std::string& what);

}  // namespace t2sf::cli
