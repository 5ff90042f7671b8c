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

#include "t2sf/pipeline/record.h"

#include "t2sf/common/error.h"
#include "t2sf/common/strings.h"

namespace t2sf::pipeline {

nlohmann::ordered_json to_json(const AugmentedRecord& r) {
  nlohmann::ordered_json prov;
  prov["seed_id"] = r.provenance.seed_id;
  prov["strategy"] = r.provenance.strategy;
  prov["style"] = r.provenance.style;
  prov["db_id"] = r.provenance.db_id;
  prov["rng_seed"] = r.provenance.rng_seed;
  nlohmann::ordered_json j;
  j["s_aug"] = r.s_aug;
  j["q"] = r.q;
  j["schema_ddl"] = r.schema_ddl;
  j["p"] = r.p;
  j["cot"] = r.cot;
  j["ed"] = r.ed;
  j["cd"] = sql::to_string(r.cd);
  j["provenance"] = std::move(prov);
  return j;
}

AugmentedRecord record_from_json(const nlohmann::json& j) {
  try {
    AugmentedRecord r;
    r.s_aug = j.at("s_aug").get<std::string>();
    r.q = j.at("q").get<std::string>();
    r.schema_ddl = j.at("schema_ddl").get<std::string>();
    r.p = j.at("p").get<std::string>();
    r.cot = j.at("cot").get<std::string>();
    r.ed = j.at("ed").get<double>();
    const auto cd = sql::difficulty_from_string(j.at("cd").get<std::string>());
    if (!cd) throw Error("unknown difficulty label " + j.at("cd").dump());
    r.cd = *cd;
    const auto& p = j.at("provenance");
    r.provenance.seed_id = p.at("seed_id").get<std::string>();
    r.provenance.strategy = p.at("strategy").get<std::string>();
    r.provenance.style = p.at("style").get<std::string>();
    r.provenance.db_id = p.at("db_id").get<std::string>();
    r.provenance.rng_seed = p.at("rng_seed").get<std::uint64_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed record: ") + e.what());
  }
}

std::string to_jsonl_line(const AugmentedRecord& r) { return to_json(r).dump() + "\n"; }

std::vector<AugmentedRecord> read_records(const std::string& path) {
  std::vector<AugmentedRecord> out;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw Error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace t2sf::pipeline
