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
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "t2sf/llm/backend.h"

namespace t2sf::llm {

// A scripted reply rule. The rule fires when every `match_all` substring
// occurs in the prompt, or when the prompt's FNV-1a hash equals `hash`.
struct MockRule {
  std::vector<std::string> match_all;
  std::optional<std::uint64_t> hash;
  std::vector<std::string> responses;  // cycled across calls
  // Scripted failure instead of a reply: "transport", "quota" or "malformed".
  std::optional<std::string> fail;
};

struct MockScript {
  std::vector<MockRule> rules;
  std::string fallback;

  // {"rules": [{"match": "text" | ["a", "b"] | "fnv:<hex>", "responses": [...], "fail": ...}],
  //  "fallback": "..."}
  static MockScript from_json(const nlohmann::json& j);
  static MockScript load(const std::string& path);
};

// Deterministic replay backend: identical request sequences give identical
// response sequences. Each rule keeps its own cycling cursor.
class MockBackend final : public LlmBackend {
 public:
  explicit MockBackend(MockScript script);
  GenerationResponse generate(const GenerationRequest& request) override;

  std::uint64_t calls() const;

 private:
  MockScript script_;
  mutable std::mutex mutex_;
  std::vector<std::size_t> cursors_;
  std::uint64_t calls_ = 0;
};

}  // namespace t2sf::llm
