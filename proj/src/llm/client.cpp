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

#include "t2sf/llm/client.h"

#include <atomic>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "t2sf/llm/mock_backend.h"

namespace t2sf::llm {

LlmFailure to_failure(const std::exception& e) {
  if (dynamic_cast<const TransportError*>(&e)) return {LlmFailure::Kind::kTransport, e.what()};
  if (dynamic_cast<const QuotaError*>(&e)) return {LlmFailure::Kind::kQuota, e.what()};
  if (dynamic_cast<const MalformedResponseError*>(&e)) return {LlmFailure::Kind::kMalformed, e.what()};
  return {LlmFailure::Kind::kOther, e.what()};
}

LlmClient::LlmClient(std::shared_ptr<LlmBackend> backend, RetryPolicy policy,
                     std::string replay_log_path)
    : backend_(std::move(backend)),
      policy_(policy),
      replay_log_path_(std::move(replay_log_path)),
      sleeper_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {
  if (!backend_) throw std::invalid_argument("LlmClient needs a backend");
  if (policy_.max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
}

std::uint64_t LlmClient::attempts() const {
  std::lock_guard lock(mutex_);
  return attempts_;
}

void LlmClient::log(const GenerationRequest& request, const nlohmann::json& outcome) {
  if (replay_log_path_.empty()) return;
  nlohmann::json line = {{"request", to_json(request)}};
  line.update(outcome);
  std::lock_guard lock(mutex_);
  std::ofstream out(replay_log_path_, std::ios::app | std::ios::binary);
  out << line.dump() << '\n';
}

GenerationResponse LlmClient::generate(const GenerationRequest& request) {
  request.validate();
  auto backoff = policy_.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    {
      std::lock_guard lock(mutex_);
      ++attempts_;
    }
    try {
      GenerationResponse response = backend_->generate(request);
      if (static_cast<int>(response.completions.size()) != request.n_samples) {
        throw MalformedResponseError("expected " + std::to_string(request.n_samples) +
                                     " completions, got " +
                                     std::to_string(response.completions.size()));
      }
      log(request, {{"response", to_json(response)}});
      return response;
    } catch (const TransportError& e) {
      if (!e.retryable() || attempt >= policy_.max_attempts) {
        log(request, {{"error", {{"kind", "transport"}, {"message", e.what()}}}});
        throw;
      }
    } catch (const QuotaError& e) {
      log(request, {{"error", {{"kind", "quota"}, {"message", e.what()}}}});
      throw;
    } catch (const MalformedResponseError& e) {
      log(request, {{"error", {{"kind", "malformed"}, {"message", e.what()}}}});
      throw;
    }
    sleeper_(backoff);
    backoff = std::chrono::milliseconds(
        static_cast<std::int64_t>(static_cast<double>(backoff.count()) * policy_.multiplier));
  }
}

std::vector<GenerationOutcome> LlmClient::generate_batch(
    const std::vector<GenerationRequest>& requests, int max_in_flight) {
  if (max_in_flight < 1) throw std::invalid_argument("max_in_flight must be >= 1");
  std::vector<GenerationOutcome> out(requests.size());
  auto run = [&](std::size_t i) {
    try {
      out[i] = generate(requests[i]);
    } catch (const std::exception& e) {
      out[i] = to_failure(e);
    }
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(max_in_flight), requests.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < requests.size(); ++i) run(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < requests.size(); i = next++) run(i);
    });
  }
  for (auto& t : threads) t.join();
  return out;
}

std::shared_ptr<LlmClient> make_client(const LlmSettings& settings) {
  std::shared_ptr<LlmBackend> backend;
  if (settings.backend == "mock") {
    if (settings.mock_script.empty()) throw ConfigError("mock backend needs a script path");
    backend = std::make_shared<MockBackend>(MockScript::load(settings.mock_script));
  } else if (settings.backend == "http") {
    if (settings.http.endpoint.empty()) throw ConfigError("http backend needs an endpoint");
    backend = std::make_shared<HttpBackend>(settings.http);
  } else {
    throw ConfigError("unknown llm backend: " + settings.backend);
  }
  return std::make_shared<LlmClient>(std::move(backend), settings.retry, settings.replay_log);
}

}  // namespace t2sf::llm
