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
#include <string>

#include "t2sf/llm/backend.h"

namespace t2sf::llm {

inline constexpr const char* kApiKeyEnv = "TEXT2SQLFLOW_API_KEY";

struct HttpBackendConfig {
  // Full URL of a chat-completion endpoint, e.g. http://127.0.0.1:8000/v1/chat/completions
  std::string endpoint;
  std::string model;
  // Falls back to the TEXT2SQLFLOW_API_KEY environment variable when empty.
  std::string api_key;
  std::chrono::milliseconds connect_timeout{5000};
  std::chrono::milliseconds read_timeout{120000};
};

struct ParsedUrl {
  std::string scheme;  // http or https
  std::string host;
  int port = 0;
  std::string path;
};

// Throws ConfigError on anything that is not http(s)://host[:port][/path].
ParsedUrl parse_url(const std::string& url);

// Speaks the common chat-completion JSON protocol over HTTP(S).
class HttpBackend final : public LlmBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);
  GenerationResponse generate(const GenerationRequest& request) override;

 private:
  GenerationResponse post_once(const GenerationRequest& request, int n);

  HttpBackendConfig config_;
  ParsedUrl url_;
};

// Parses one response body. Throws MalformedResponseError.
GenerationResponse parse_chat_response(const std::string& body);

}  // namespace t2sf::llm
