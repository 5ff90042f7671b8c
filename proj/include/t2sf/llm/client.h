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

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "t2sf/llm/backend.h"
#include "t2sf/llm/http_backend.h"

namespace t2sf::llm {

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
};

// Adds retries, batching and an optional JSON Lines replay log on top of a
// backend. Safe to share between threads.
class LlmClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  explicit LlmClient(std::shared_ptr<LlmBackend> backend, RetryPolicy policy = {},
                     std::string replay_log_path = {});

  // Throws TransportError after the final attempt, QuotaError, MalformedResponseError.
  GenerationResponse generate(const GenerationRequest& request);

  // Results follow input order; failures are reported per item.
  std::vector<GenerationOutcome> generate_batch(const std::vector<GenerationRequest>& requests,
                                                int max_in_flight);

  void set_sleeper(Sleeper sleeper) { sleeper_ = std::move(sleeper); }
  std::uint64_t attempts() const;

 private:
  void log(const GenerationRequest& request, const nlohmann::json& outcome);

  std::shared_ptr<LlmBackend> backend_;
  RetryPolicy policy_;
  std::string replay_log_path_;
  Sleeper sleeper_;
  mutable std::mutex mutex_;
  std::uint64_t attempts_ = 0;
};

LlmFailure to_failure(const std::exception& e);

struct LlmSettings {
  std::string backend = "mock";  // "mock" or "http"
  std::string mock_script;       // path, for the mock backend
  HttpBackendConfig http;
  std::string replay_log;
  RetryPolicy retry;
};

// Throws ConfigError for unknown backends or a missing mock script.
std::shared_ptr<LlmClient> make_client(const LlmSettings& settings);

}  // namespace t2sf::llm
