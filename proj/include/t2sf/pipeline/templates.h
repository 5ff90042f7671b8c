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

#include "t2sf/db/database_manager.h"
#include "t2sf/pipeline/strategies.h"

namespace t2sf::pipeline {

// Instruction templates for the four prompt kinds. Slots are written {name};
// literal braces are doubled.
struct PromptTemplates {
  std::string aug_instruction;   // {schema} {values} {strategy} {sql}
  std::string nl_instruction;    // {schema} {style} {sql}
  std::string cot_instruction;   // {schema} {question} {sql}
  std::string task_instruction;  // {schema} {question}

  static PromptTemplates defaults();
  // JSON object with any of the four keys; missing keys keep the defaults.
  // Throws ConfigError.
  static PromptTemplates load(const std::string& path);
};

// One "table.column = literal" line per value.
std::string format_values(const std::vector<db::SampledValue>& values);
std::string format_strategy(const AugmentationStrategy& strategy);
std::string format_style(const QuestionStyle& style);

// Throw MissingSlotError when a slot is unbound or empty ({values} may be empty).
std::string build_aug_prompt(const PromptTemplates& t, const std::string& schema_ddl,
                             const std::vector<db::SampledValue>& values,
                             const AugmentationStrategy& strategy, const std::string& s_orig);
std::string build_nl_prompt(const PromptTemplates& t, const std::string& schema_ddl,
                            const QuestionStyle& style, const std::string& s_aug);
std::string build_cot_prompt(const PromptTemplates& t, const std::string& schema_ddl,
                             const std::string& question, const std::string& s_aug);
std::string build_task_prompt(const PromptTemplates& t, const std::string& schema_ddl,
                              const std::string& question);

}  // namespace t2sf::pipeline
