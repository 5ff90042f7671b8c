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

#include "t2sf/cli/config.h"

#include <filesystem>
#include <set>

#include <nlohmann/json.hpp>

#include "t2sf/common/strings.h"

namespace t2sf::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Section {
 public:
  Section(const json& parent, const std::string& name, std::set<std::string> keys, fs::path base)
      : name_(name), base_(std::move(base)) {
    if (!parent.contains(name)) return;
    node_ = &parent.at(name);
    if (!node_->is_object()) throw ConfigError("'" + name + "' must be an object");
    for (const auto& [key, value] : node_->items()) {
      if (!keys.count(key)) throw ConfigError("unknown key '" + name + "." + key + "'");
    }
  }

  template <typename T>
  void get(const char* key, T& field) const {
    if (!node_ || !node_->contains(key)) return;
    try {
      field = node_->at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError("'" + name_ + "." + key + "' has the wrong type");
    }
  }

  void path(const char* key, std::string& field) const {
    std::string raw;
    get(key, raw);
    if (raw.empty()) return;
    const fs::path p(raw);
    field = p.is_absolute() ? raw : (base_ / p).lexically_normal().string();
  }

  void millis(const char* key, std::chrono::milliseconds& field) const {
    std::int64_t ms = field.count();
    get(key, ms);
    field = std::chrono::milliseconds(ms);
  }

 private:
  std::string name_;
  fs::path base_;
  const json* node_ = nullptr;
};

}  // namespace

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw ConfigError("no " + what + " given");
  if (!fs::exists(path)) throw ConfigError(what + " not found: " + path);
}

RunConfig load_run_config(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const std::exception& e) {
    throw ConfigError("cannot load config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object: " + path);
  const std::set<std::string> top = {"database", "llm", "pipeline", "retrieval", "seed", "jobs"};
  for (const auto& [key, value] : j.items()) {
    if (!top.count(key)) throw ConfigError("unknown key '" + key + "'");
  }
  const fs::path base = fs::absolute(path).parent_path();
  RunConfig c;

  const Section database(j, "database", {"backend", "path", "timeout_ms", "max_connections"}, base);
  database.get("backend", c.database.backend);
  database.path("path", c.database.location);
  database.millis("timeout_ms", c.database.default_timeout);
  database.get("max_connections", c.database.max_connections);

  const Section llm(j, "llm",
                    {"backend", "mock_script", "endpoint", "model", "api_key", "replay_log", "max_attempts",
                     "initial_backoff_ms", "connect_timeout_ms", "read_timeout_ms"},
                    base);
  llm.get("backend", c.llm.backend);
  llm.path("mock_script", c.llm.mock_script);
  llm.get("endpoint", c.llm.http.endpoint);
  llm.get("model", c.llm.http.model);
  llm.get("api_key", c.llm.http.api_key);
  llm.path("replay_log", c.llm.replay_log);
  llm.get("max_attempts", c.llm.retry.max_attempts);
  llm.millis("initial_backoff_ms", c.llm.retry.initial_backoff);
  llm.millis("connect_timeout_ms", c.llm.http.connect_timeout);
  llm.millis("read_timeout_ms", c.llm.http.read_timeout);

  const Section pipe(j, "pipeline",
                     {"seeds", "output", "report", "templates", "db_id", "n_candidates", "question_k", "ed_k",
                      "cot_attempts", "values_per_prompt", "temperature", "timeout_ms", "strategies", "styles"},
                     base);
  pipe.path("seeds", c.seeds_path);
  pipe.path("output", c.output_path);
  pipe.path("report", c.report_path);
  pipe.path("templates", c.templates_path);
  pipe.get("db_id", c.db_id);
  pipe.get("n_candidates", c.pipeline.n_candidates);
  pipe.get("question_k", c.pipeline.question_k);
  pipe.get("ed_k", c.pipeline.ed_k);
  pipe.get("cot_attempts", c.pipeline.cot_attempts);
  pipe.get("values_per_prompt", c.pipeline.values_per_prompt);
  pipe.get("temperature", c.pipeline.temperature);
  std::int64_t timeout_ms = 0;
  pipe.get("timeout_ms", timeout_ms);
  if (timeout_ms != 0) c.pipeline.timeout = std::chrono::milliseconds(timeout_ms);
  std::vector<std::string> names;
  pipe.get("strategies", names);
  for (const auto& n : names) {
    const auto kind = pipeline::strategy_from_string(n);
    if (!kind) throw ConfigError("unknown strategy '" + n + "'");
    c.pipeline.strategies.push_back(*kind);
  }
  names.clear();
  pipe.get("styles", names);
  for (const auto& n : names) {
    const auto kind = pipeline::style_from_string(n);
    if (!kind) throw ConfigError("unknown style '" + n + "'");
    c.pipeline.styles.push_back(*kind);
  }

  const Section ret(j, "retrieval",
                    {"train_data", "kb", "model", "temperature", "negatives", "learning_rate", "epochs",
                     "batch_size", "validation_size", "feature_count", "dim", "instruction"},
                    base);
  ret.path("train_data", c.train_data_path);
  ret.path("kb", c.kb_path);
  ret.path("model", c.model_path);
  ret.get("temperature", c.training.temperature);
  ret.get("negatives", c.training.negatives_per_sample);
  ret.get("learning_rate", c.training.learning_rate);
  ret.get("epochs", c.training.epochs);
  ret.get("batch_size", c.training.batch_size);
  ret.get("validation_size", c.training.validation_size);
  ret.get("feature_count", c.feature_count);
  ret.get("dim", c.dim);
  ret.get("instruction", c.instruction);

  try {
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<int>();
  } catch (const json::exception&) {
    throw ConfigError("'seed' and 'jobs' must be non-negative integers");
  }
  return c;
}

}  // namespace t2sf::cli
