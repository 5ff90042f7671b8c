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

#include "t2sf/llm/types.h"

#include <stdexcept>

namespace t2sf::llm {

std::string to_string(Role r) {
  switch (r) {
    case Role::kSystem: return "system";
    case Role::kUser: return "user";
    case Role::kAssistant: return "assistant";
  }
  return "user";
}

void GenerationRequest::validate() const {
  if (messages.empty()) throw std::invalid_argument("generation request has no messages");
  if (temperature < 0) throw std::invalid_argument("temperature must be >= 0");
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  if (max_tokens < 1) throw std::invalid_argument("max_tokens must be >= 1");
}

std::string GenerationRequest::prompt_text() const {
  std::string out;
  for (const auto& m : messages) {
    if (!out.empty()) out += '\n';
    out += m.content;
  }
  return out;
}

GenerationRequest user_request(std::string prompt, int n_samples, double temperature) {
  GenerationRequest r;
  r.messages.push_back({Role::kUser, std::move(prompt)});
  r.n_samples = n_samples;
  r.temperature = temperature;
  return r;
}

nlohmann::json to_json(const GenerationRequest& r) {
  nlohmann::json messages = nlohmann::json::array();
  for (const auto& m : r.messages) {
    messages.push_back({{"role", to_string(m.role)}, {"content", m.content}});
  }
  return {{"model", r.model_name},
          {"messages", std::move(messages)},
          {"temperature", r.temperature},
          {"n", r.n_samples},
          {"max_tokens", r.max_tokens}};
}

nlohmann::json to_json(const GenerationResponse& r) {
  return {{"completions", r.completions},
          {"usage",
           {{"prompt_tokens", r.usage.prompt_tokens},
            {"completion_tokens", r.usage.completion_tokens}}}};
}

}  // namespace t2sf::llm
