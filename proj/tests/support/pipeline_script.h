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
#include <vector>

#include <nlohmann/json.hpp>

#include "t2sf/pipeline/templates.h"

namespace t2sf::testing {

// What the scripted model says about one augmented query.
struct CandidatePlan {
  std::string sql;
  std::vector<std::string> questions;  // replies to the k question prompts, in order
  std::vector<std::string> cots;       // replies to CoT prompts; empty means one matching CoT
  int ed_hits = 8;                     // task samples out of ed_k that return `sql`
};

struct SeedPlan {
  std::string seed_sql;
  // Augmentation replies in order. Entries listed in `candidates` are fenced
  // as SQL; `raw_replies` are appended verbatim (prose, broken SQL, ...).
  std::vector<CandidatePlan> candidates;
  std::vector<std::string> raw_replies;
};

std::string fenced(const std::string& sql);
std::string matching_cot(const std::string& sql);

// A mock script for the default templates. CoT and task prompts are matched
// by exact hash, so each record consumes its own rules and the replies do not
// depend on the order in which seeds are processed.
nlohmann::json build_pipeline_script(const std::vector<SeedPlan>& plans, const std::string& schema_ddl,
                                     const pipeline::PromptTemplates& templates, int ed_k = 8);

// Twenty seeds over the concert fixture with a mix of good, broken, duplicate,
// prose and write-statement replies, CoT retries, and varied ed hit counts.
std::vector<SeedPlan> concert_seed_plans();

}  // namespace t2sf::testing
