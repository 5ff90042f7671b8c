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

#include "t2sf/llm/mock_backend.h"

#include <algorithm>
#include <sstream>

#include "t2sf/common/hash.h"
#include "t2sf/common/strings.h"

namespace t2sf::llm {
namespace {

std::int64_t word_count(const std::string& text) {
  std::istringstream in(text);
  std::string w;
  std::int64_t n = 0;
  while (in >> w) ++n;
  return n;
}

bool rule_matches(const MockRule& rule, const std::string& prompt) {
  if (rule.hash) return fnv1a64(prompt) == *rule.hash;
  return std::all_of(rule.match_all.begin(), rule.match_all.end(),
                     [&](const std::string& s) { return prompt.find(s) != std::string::npos; });
}

}  // namespace

MockScript MockScript::from_json(const nlohmann::json& j) {
  MockScript script;
  if (!j.is_object()) throw ConfigError("mock script must be a JSON object");
  script.fallback = j.value("fallback", std::string());
  for (const auto& r : j.value("rules", nlohmann::json::array())) {
    MockRule rule;
    const auto& match = r.at("match");
    if (match.is_string()) {
      const auto text = match.get<std::string>();
      if (text.rfind("fnv:", 0) == 0) {
        rule.hash = std::stoull(text.substr(4), nullptr, 16);
      } else {
        rule.match_all.push_back(text);
      }
    } else if (match.is_array()) {
      rule.match_all = match.get<std::vector<std::string>>();
    } else {
      throw ConfigError("mock rule match must be a string or a list of strings");
    }
    rule.responses = r.value("responses", std::vector<std::string>{});
    if (r.contains("fail")) {
      rule.fail = r["fail"].get<std::string>();
      if (*rule.fail != "transport" && *rule.fail != "quota" && *rule.fail != "malformed") {
        throw ConfigError("unknown mock failure kind: " + *rule.fail);
      }
    } else if (rule.responses.empty()) {
      throw ConfigError("mock rule needs responses or a fail kind");
    }
    script.rules.push_back(std::move(rule));
  }
  return script;
}

MockScript MockScript::load(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  try {
    return from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse mock script " + path + ": " + e.what());
  }
}

MockBackend::MockBackend(MockScript script)
    : script_(std::move(script)), cursors_(script_.rules.size(), 0) {}

std::uint64_t MockBackend::calls() const {
  std::lock_guard lock(mutex_);
  return calls_;
}

GenerationResponse MockBackend::generate(const GenerationRequest& request) {
  request.validate();
  const std::string prompt = request.prompt_text();
  std::lock_guard lock(mutex_);
  ++calls_;
  GenerationResponse out;
  out.usage.prompt_tokens = word_count(prompt);
  std::size_t i = 0;
  for (; i < script_.rules.size(); ++i) {
    if (rule_matches(script_.rules[i], prompt)) break;
  }
  if (i == script_.rules.size()) {
    out.completions.assign(static_cast<std::size_t>(request.n_samples), script_.fallback);
  } else {
    const MockRule& rule = script_.rules[i];
    if (rule.fail) {
      if (*rule.fail == "transport") throw TransportError("scripted transport failure", true);
      if (*rule.fail == "quota") throw QuotaError("scripted quota failure");
      throw MalformedResponseError("scripted malformed response");
    }
    for (int k = 0; k < request.n_samples; ++k) {
      out.completions.push_back(rule.responses[cursors_[i] % rule.responses.size()]);
      ++cursors_[i];
    }
  }
  for (const auto& c : out.completions) out.usage.completion_tokens += word_count(c);
  return out;
}

}  // namespace t2sf::llm
