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

#include "t2sf/llm/http_backend.h"

#include <cstdlib>
#include <regex>

#include <httplib.h>

#include <fmt/format.h>

namespace t2sf::llm {

ParsedUrl parse_url(const std::string& url) {
  static const std::regex kUrl(R"(^(https?)://([^/:]+)(?::(\d+))?(/.*)?$)", std::regex::icase);
  std::smatch m;
  if (!std::regex_match(url, m, kUrl)) throw ConfigError("invalid endpoint URL: " + url);
  ParsedUrl out;
  out.scheme = m[1].str();
  for (auto& c : out.scheme) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  out.host = m[2].str();
  out.port = m[3].matched ? std::stoi(m[3].str()) : (out.scheme == "https" ? 443 : 80);
  out.path = m[4].matched ? m[4].str() : "/";
  return out;
}

GenerationResponse parse_chat_response(const std::string& body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedResponseError(std::string("response is not JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("choices") || !j["choices"].is_array()) {
    throw MalformedResponseError("response has no choices array");
  }
  GenerationResponse out;
  for (const auto& choice : j["choices"]) {
    const auto* content = choice.contains("message") && choice["message"].is_object() &&
                                  choice["message"].contains("content")
                              ? &choice["message"]["content"]
                              : nullptr;
    if (!content || !(content->is_string() || content->is_null())) {
      throw MalformedResponseError("choice without message.content");
    }
    out.completions.push_back(content->is_string() ? content->get<std::string>() : "");
  }
  if (j.contains("usage") && j["usage"].is_object()) {
    out.usage.prompt_tokens = j["usage"].value("prompt_tokens", std::int64_t{0});
    out.usage.completion_tokens = j["usage"].value("completion_tokens", std::int64_t{0});
  }
  return out;
}

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
  url_ = parse_url(config_.endpoint);
  if (config_.api_key.empty()) {
    if (const char* env = std::getenv(kApiKeyEnv)) config_.api_key = env;
  }
}

GenerationResponse HttpBackend::post_once(const GenerationRequest& request, int n) {
  GenerationRequest body_request = request;
  body_request.n_samples = n;
  if (body_request.model_name.empty()) body_request.model_name = config_.model;
  const std::string body = to_json(body_request).dump();

  httplib::Client client(fmt::format("{}://{}:{}", url_.scheme, url_.host, url_.port));
  client.set_connection_timeout(config_.connect_timeout);
  client.set_read_timeout(config_.read_timeout);
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

  auto res = client.Post(url_.path, headers, body, "application/json");
  if (!res) {
    throw TransportError("request to " + config_.endpoint + " failed: " + httplib::to_string(res.error()),
                         true);
  }
  if (res->status == 429) throw QuotaError("quota exceeded (HTTP 429): " + res->body.substr(0, 200));
  if (res->status >= 500) {
    throw TransportError(fmt::format("server error HTTP {}", res->status), true);
  }
  if (res->status != 200) {
    throw TransportError(fmt::format("HTTP {}: {}", res->status, res->body.substr(0, 200)), false);
  }
  return parse_chat_response(res->body);
}

GenerationResponse HttpBackend::generate(const GenerationRequest& request) {
  request.validate();
  // Some servers ignore `n`; top up with further calls until we have enough.
  GenerationResponse out;
  while (static_cast<int>(out.completions.size()) < request.n_samples) {
    const int need = request.n_samples - static_cast<int>(out.completions.size());
    GenerationResponse part = post_once(request, need);
    if (part.completions.empty()) throw MalformedResponseError("response contained no choices");
    for (auto& c : part.completions) {
      if (static_cast<int>(out.completions.size()) < request.n_samples) out.completions.push_back(std::move(c));
    }
    out.usage.prompt_tokens += part.usage.prompt_tokens;
    out.usage.completion_tokens += part.usage.completion_tokens;
  }
  return out;
}

}  // namespace t2sf::llm
