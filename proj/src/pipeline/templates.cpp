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

#include "t2sf/pipeline/templates.h"

#include <nlohmann/json.hpp>

#include "t2sf/common/strings.h"
#include "t2sf/common/template.h"

namespace t2sf::pipeline {

namespace {

constexpr const char* kAug = R"(Rewrite the SQL query below into a new query that serves a realistic analytical need on the same database.

Augmentation direction:
{strategy}

Database schema:
{schema}

Values sampled from the database:
{values}

Original query:
{sql}

Return exactly one new SQLite query in a ```sql fenced block. It must run against this schema and must not repeat the original query.)";

constexpr const char* kNl = R"(Write the natural-language question that a user would ask to get the result of the SQL query below.

Question style:
{style}

Database schema:
{schema}

SQL query:
{sql}

Reply with the question only. Mention every condition the query applies and nothing it does not.)";

constexpr const char* kCot = R"(Work out, step by step, how to answer the question with a SQL query on the database below.

Database schema:
{schema}

Question:
{question}

Reference query (your final query must return the same result):
{sql}

Start from what the question asks for, find the tables and columns involved, decide which filters, joins, groupings and orderings are needed, and build the query up piece by piece. Finish with the final SQLite query in a ```sql fenced block.)";

constexpr const char* kTask = R"(Translate the question into a SQLite query for the database below. Reason through it first, then give the final query in a ```sql fenced block.

Database schema:
{schema}

Question:
{question})";

}  // namespace

PromptTemplates PromptTemplates::defaults() { return {kAug, kNl, kCot, kTask}; }

PromptTemplates PromptTemplates::load(const std::string& path) {
  PromptTemplates t = defaults();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const std::exception& e) {
    throw ConfigError("cannot load prompt templates from " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("prompt template file must hold a JSON object: " + path);
  auto take = [&](const char* key, std::string& field) {
    if (!j.contains(key)) return;
    if (!j[key].is_string()) throw ConfigError(std::string("template '") + key + "' must be a string");
    field = j[key].get<std::string>();
  };
  take("aug_instruction", t.aug_instruction);
  take("nl_instruction", t.nl_instruction);
  take("cot_instruction", t.cot_instruction);
  take("task_instruction", t.task_instruction);
  return t;
}

std::string format_values(const std::vector<db::SampledValue>& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += '\n';
    out += v.table + "." + v.column + " = " + db::to_sql_literal(v.value);
  }
  return out;
}

std::string format_strategy(const AugmentationStrategy& strategy) {
  return std::string(strategy.name) + ": " + std::string(strategy.description);
}

std::string format_style(const QuestionStyle& style) {
  return std::string(style.name) + ": " + std::string(style.description) + " Example: \"" +
         std::string(style.exemplar) + "\"";
}

std::string build_aug_prompt(const PromptTemplates& t, const std::string& schema_ddl,
                             const std::vector<db::SampledValue>& values,
                             const AugmentationStrategy& strategy, const std::string& s_orig) {
  return render_template(t.aug_instruction,
                         {{"schema", schema_ddl},
                          {"values", format_values(values)},
                          {"strategy", format_strategy(strategy)},
                          {"sql", s_orig}},
                         {"values"});
}

std::string build_nl_prompt(const PromptTemplates& t, const std::string& schema_ddl,
                            const QuestionStyle& style, const std::string& s_aug) {
  return render_template(t.nl_instruction,
                         {{"schema", schema_ddl}, {"style", format_style(style)}, {"sql", s_aug}});
}

std::string build_cot_prompt(const PromptTemplates& t, const std::string& schema_ddl,
                             const std::string& question, const std::string& s_aug) {
  return render_template(t.cot_instruction,
                         {{"schema", schema_ddl}, {"question", question}, {"sql", s_aug}});
}

std::string build_task_prompt(const PromptTemplates& t, const std::string& schema_ddl,
                              const std::string& question) {
  return render_template(t.task_instruction, {{"schema", schema_ddl}, {"question", question}});
}

}  // namespace t2sf::pipeline
