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
#include <vector>

#include <nlohmann/json.hpp>

#include "t2sf/sql/hardness.h"

namespace t2sf::pipeline {

struct Provenance {
  std::string seed_id;
  std::string strategy;
  std::string style;
  std::string db_id;
  std::uint64_t rng_seed = 0;
  bool operator==(const Provenance&) const = default;
};

// One dataset row.
struct AugmentedRecord {
  std::string s_aug;
  std::string q;
  std::string schema_ddl;
  std::string p;
  std::string cot;
  double ed = 0;
  sql::Difficulty cd = sql::Difficulty::kEasy;
  Provenance provenance;
  bool operator==(const AugmentedRecord&) const = default;
};

// Fields in the fixed order s_aug, q, schema_ddl, p, cot, ed, cd, provenance.
nlohmann::ordered_json to_json(const AugmentedRecord& r);
// Throws Error on missing or mistyped fields.
AugmentedRecord record_from_json(const nlohmann::json& j);
std::string to_jsonl_line(const AugmentedRecord& r);
std::vector<AugmentedRecord> read_records(const std::string& path);

}  // namespace t2sf::pipeline
