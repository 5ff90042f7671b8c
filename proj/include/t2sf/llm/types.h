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
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "t2sf/common/error.h"

namespace t2sf::llm {

enum class Role { kSystem, kUser, kAssistant };

std::string to_string(Role r);

struct Message {
  Role role = Role::kUser;
  std::string content;
};

struct GenerationRequest {
  std::vector<Message> messages;
  double temperature = 0.8;
  int n_samples = 1;
  int max_tokens = 1024;
  std::string model_name;

  // Throws std::invalid_argument.
  void validate() const;
  // All message contents joined by newlines; what mock rules match against.
  std::string prompt_text() const;
};

GenerationRequest user_request(std::string prompt, int n_samples = 1, double temperature = 0.8);

struct Usage {
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
};

struct GenerationResponse {
  std::vector<std::string> completions;
  Usage usage;
};

class LlmError : public Error {
 public:
  using Error::Error;
};

// Network failure or HTTP status the caller may retry (5xx).
class TransportError : public LlmError {
 public:
  TransportError(const std::string& message, bool retryable)
      : LlmError(message), retryable_(retryable) {}
  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

class QuotaError : public LlmError {
 public:
  using LlmError::LlmError;
};

class MalformedResponseError : public LlmError {
 public:
  using LlmError::LlmError;
};

struct LlmFailure {
  enum class Kind { kTransport, kQuota, kMalformed, kOther };
  Kind kind = Kind::kOther;
  std::string message;
};

using GenerationOutcome = std::variant<GenerationResponse, LlmFailure>;

nlohmann::json to_json(const GenerationRequest& r);
nlohmann::json to_json(const GenerationResponse& r);

}  // namespace t2sf::llm
