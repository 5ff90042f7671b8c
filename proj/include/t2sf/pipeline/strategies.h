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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "t2sf/common/rng.h"

namespace t2sf::pipeline {

enum class StrategyKind {
  kDataValueTransformations,
  kQueryStructureModifications,
  kBusinessLogicChanges,
  kComplexityEnhancements,
  kAdvancedSqlFeatures,
  kPerformanceAndOptimization,
};

struct AugmentationStrategy {
  StrategyKind kind;
  std::string_view name;  // snake_case, as written to provenance
  std::string_view description;
};

inline constexpr std::size_t kStrategyCount = 6;

const std::array<AugmentationStrategy, kStrategyCount>& all_strategies();
const AugmentationStrategy& strategy_info(StrategyKind kind);
std::optional<StrategyKind> strategy_from_string(std::string_view name);

// Uniform over `allowed`, or over all six when `allowed` is empty.
const AugmentationStrategy& sample_strategy(Rng& rng, const std::vector<StrategyKind>& allowed = {});

enum class StyleGroup { kTone, kSyntax, kDensity, kInteraction };

enum class StyleKind {
  kFormal,
  kColloquial,
  kImperative,
  kInterrogative,
  kDeclarative,
  kConcise,
  kDescriptive,
  kVague,
  kMetaphorical,
  kRolePlaying,
  kProcedural,
};

struct QuestionStyle {
  StyleKind kind;
  StyleGroup group;
  std::string_view name;
  std::string_view description;
  std::string_view exemplar;
};

inline constexpr std::size_t kStyleCount = 11;

const std::array<QuestionStyle, kStyleCount>& all_styles();
const QuestionStyle& style_info(StyleKind kind);
std::optional<StyleKind> style_from_string(std::string_view name);
std::string to_string(StyleGroup group);

const QuestionStyle& sample_style(Rng& rng, const std::vector<StyleKind>& allowed = {});

}  // namespace t2sf::pipeline
