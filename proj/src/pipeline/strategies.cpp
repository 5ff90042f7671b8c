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

#include "t2sf/pipeline/strategies.h"

#include <stdexcept>

namespace t2sf::pipeline {

namespace {

constexpr std::array<AugmentationStrategy, kStrategyCount> kStrategies = {{
    {StrategyKind::kDataValueTransformations, "data_value_transformations",
     "Change the concrete values the query depends on: filter constants, date or numeric "
     "thresholds, sort keys, LIMIT sizes, or the granularity used for grouping."},
    {StrategyKind::kQueryStructureModifications, "query_structure_modifications",
     "Ask for the same kind of information with a different query shape: aggregates as window "
     "functions or the reverse, flat queries as subqueries or CTEs, joins as EXISTS or IN tests, "
     "correlated subqueries as uncorrelated ones or the reverse."},
    {StrategyKind::kBusinessLogicChanges, "business_logic_changes",
     "Move to a neighbouring analytical question: another business area, a coarser or finer level "
     "of detail, another viewpoint such as cost instead of profit, or another metric such as an "
     "average instead of a sum or a share instead of a count."},
    {StrategyKind::kComplexityEnhancements, "complexity_enhancements",
     "Make the query more involved: add filter conditions, join further tables, add CASE "
     "expressions, or add checks on data quality."},
    {StrategyKind::kAdvancedSqlFeatures, "advanced_sql_features",
     "Use less common SQL: window functions with PARTITION BY, UNION, INTERSECT or EXCEPT, "
     "recursive CTEs, pivoting or unpivoting."},
    {StrategyKind::kPerformanceAndOptimization, "performance_and_optimization",
     "Make the query cheaper to run: restructure it so indexes can be used, prefer efficient "
     "patterns, and tighten the WHERE clause."},
}};

constexpr std::array<QuestionStyle, kStyleCount> kStyles = {{
    {StyleKind::kFormal, StyleGroup::kTone, "formal", "Polished, neutral wording as in a written report.",
     "Please provide the names of all singers whose age exceeds 30."},
    {StyleKind::kColloquial, StyleGroup::kTone, "colloquial", "Relaxed everyday speech.",
     "Hey, which singers are older than 30?"},
    {StyleKind::kImperative, StyleGroup::kSyntax, "imperative", "A direct command.",
     "List every singer older than 30."},
    {StyleKind::kInterrogative, StyleGroup::kSyntax, "interrogative", "A direct question.",
     "Which singers are older than 30?"},
    {StyleKind::kDeclarative, StyleGroup::kSyntax, "declarative",
     "A statement of what the asker wants to know.", "I need the names of the singers who are over 30."},
    {StyleKind::kConcise, StyleGroup::kDensity, "concise", "As few words as possible.",
     "Singers over 30?"},
    {StyleKind::kDescriptive, StyleGroup::kDensity, "descriptive",
     "Adds context and detail about what is wanted.",
     "For the festival line-up I want the full names of every singer on record whose age is above 30."},
    {StyleKind::kVague, StyleGroup::kDensity, "vague",
     "Leaves some details implicit so the reader has to infer them.",
     "Who are the more experienced singers?"},
    {StyleKind::kMetaphorical, StyleGroup::kDensity, "metaphorical",
     "Phrases the request with figurative language.",
     "Which voices have already seen more than thirty summers?"},
    {StyleKind::kRolePlaying, StyleGroup::kInteraction, "role_playing",
     "Speaks from the point of view of a persona.",
     "As the venue manager planning next month, I want to know which singers are over 30."},
    {StyleKind::kProcedural, StyleGroup::kInteraction, "procedural", "Spells the request out as steps.",
     "First take all singers, then keep those older than 30, and finally give me their names."},
}};

template <typename Info, typename Kind, std::size_t N>
const Info& pick(Rng& rng, const std::array<Info, N>& all, const std::vector<Kind>& allowed) {
  if (allowed.empty()) return all[rng.uniform_index(N)];
  const Kind k = allowed[rng.uniform_index(allowed.size())];
  return all[static_cast<std::size_t>(k)];
}

}  // namespace

const std::array<AugmentationStrategy, kStrategyCount>& all_strategies() { return kStrategies; }

const AugmentationStrategy& strategy_info(StrategyKind kind) {
  return kStrategies.at(static_cast<std::size_t>(kind));
}

std::optional<StrategyKind> strategy_from_string(std::string_view name) {
  for (const auto& s : kStrategies) {
    if (s.name == name) return s.kind;
  }
  return std::nullopt;
}

const AugmentationStrategy& sample_strategy(Rng& rng, const std::vector<StrategyKind>& allowed) {
  return pick(rng, kStrategies, allowed);
}

const std::array<QuestionStyle, kStyleCount>& all_styles() { return kStyles; }

const QuestionStyle& style_info(StyleKind kind) { return kStyles.at(static_cast<std::size_t>(kind)); }

std::optional<StyleKind> style_from_string(std::string_view name) {
  for (const auto& s : kStyles) {
    if (s.name == name) return s.kind;
  }
  return std::nullopt;
}

std::string to_string(StyleGroup group) {
  switch (group) {
    case StyleGroup::kTone:
      return "tone_and_formality";
    case StyleGroup::kSyntax:
      return "syntactic_structure_and_intent";
    case StyleGroup::kDensity:
      return "information_density_and_clarity";
    case StyleGroup::kInteraction:
      return "interaction_patterns";
  }
  throw std::logic_error("bad style group");
}

const QuestionStyle& sample_style(Rng& rng, const std::vector<StyleKind>& allowed) {
  return pick(rng, kStyles, allowed);
}

}  // namespace t2sf::pipeline
