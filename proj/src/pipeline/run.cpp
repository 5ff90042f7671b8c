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

#include "t2sf/pipeline/run.h"

#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "t2sf/common/strings.h"
#include "t2sf/sql/hardness.h"

namespace t2sf::pipeline {

std::vector<Seed> load_seeds(const std::string& path, const std::string& default_db_id) {
  std::vector<std::string> lines;
  try {
    lines = read_lines(path);
  } catch (const std::exception& e) {
    throw ConfigError("cannot read seed file " + path + ": " + e.what());
  }
  std::vector<Seed> seeds;
  std::size_t n = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = trim(lines[i]);
    if (line.empty()) continue;
    Seed s{"seed-" + std::to_string(n++), std::string(line), default_db_id};
    if (line.front() == '{') {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ":" + std::to_string(i + 1) + ": " + e.what());
      }
      if (!j.contains("sql") || !j["sql"].is_string()) {
        throw ConfigError(path + ":" + std::to_string(i + 1) + ": missing string field 'sql'");
      }
      s.sql = j["sql"].get<std::string>();
      if (j.contains("db_id") && j["db_id"].is_string()) s.db_id = j["db_id"].get<std::string>();
      if (j.contains("id")) s.id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
    }
    seeds.push_back(std::move(s));
  }
  return seeds;
}

void PipelineConfig::validate() const {
  auto positive = [](int v, const char* name) {
    if (v < 1) throw ConfigError(std::string(name) + " must be at least 1");
  };
  positive(n_candidates, "n_candidates");
  positive(question_k, "question_k");
  positive(ed_k, "ed_k");
  positive(cot_attempts, "cot_attempts");
  positive(jobs, "jobs");
  if (values_per_prompt < 0) throw ConfigError("values_per_prompt must not be negative");
  if (!(temperature >= 0)) throw ConfigError("temperature must not be negative");
  if (timeout && timeout->count() <= 0) throw ConfigError("timeout must be positive");
}

nlohmann::ordered_json to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["seeds"] = r.seeds;
  j["seeds_rejected"] = r.seeds_rejected;
  j["generated"] = r.generated;
  j["filtered"] = r.filtered;
  j["question_ok"] = r.question_ok;
  j["cot_ok"] = r.cot_ok;
  j["records"] = r.records;
  j["failures"] = r.failures;
  return j;
}

namespace {

struct SeedResult {
  RunReport tally;
  std::vector<AugmentedRecord> records;
};

SeedResult process_seed(const Seed& seed, std::size_t index, const PipelineConfig& config,
                        llm::LlmClient& llm, db::DatabaseManager& db, db::ConnectionHandle handle,
                        const std::string& schema_ddl, const retrieval::RetrieverModel& embedder) {
  SeedResult out;
  auto fail = [&](const std::string& why) { out.tally.failures.push_back(seed.id + ": " + why); };

  const std::uint64_t seed_rng = Rng::derive(config.rng_seed, index);
  Rng rng(seed_rng);

  if (!is_read_only_query(seed.sql)) {
    out.tally.seeds_rejected = 1;
    fail("seed is not a single read-only query");
    return out;
  }
  const auto seed_run = db.execute_sql(handle, seed.sql, config.timeout);
  if (const auto* err = std::get_if<db::ExecutionError>(&seed_run)) {
    out.tally.seeds_rejected = 1;
    fail("seed does not execute (" + db::to_string(err->kind) + "): " + err->message);
    return out;
  }

  const AugmentationStrategy& strategy = sample_strategy(rng, config.strategies);
  std::vector<db::SampledValue> values;
  if (config.values_per_prompt > 0) {
    try {
      values = db.sample_values(handle, static_cast<std::size_t>(config.values_per_prompt), rng.next());
    } catch (const db::EmptyDatabaseError&) {
      values.clear();
    }
  }

  std::vector<std::string> candidates;
  try {
    candidates = augment_sql(seed.sql, strategy, schema_ddl, values, llm, config.n_candidates,
                             config.templates, config.temperature);
  } catch (const llm::LlmError& e) {
    out.tally.seeds_rejected = 1;
    fail(std::string("augmentation request failed: ") + e.what());
    return out;
  }
  out.tally.generated = candidates.size();

  const auto survivors = execution_filter(candidates, db, handle, config.timeout);
  out.tally.filtered = survivors.size();

  for (std::size_t c = 0; c < survivors.size(); ++c) {
    const std::string& s_aug = survivors[c];
    const std::string tag = "candidate " + std::to_string(c) + ": ";
    QuestionChoice question;
    try {
      question = generate_questions(s_aug, schema_ddl, config.question_k, llm, rng, embedder,
                                    config.templates, config.styles, config.temperature);
    } catch (const GenerationFailure& e) {
      fail(tag + e.what());
      continue;
    }
    ++out.tally.question_ok;

    std::optional<std::string> cot;
    try {
      cot = generate_cot(schema_ddl, question.question, s_aug, llm, db, handle, config.templates,
                         config.cot_attempts, config.timeout, config.temperature);
    } catch (const llm::LlmError& e) {
      fail(tag + "chain-of-thought request failed: " + e.what());
      continue;
    }
    if (!cot) {
      fail(tag + "no chain of thought matched the query by execution");
      continue;
    }
    ++out.tally.cot_ok;

    AugmentedRecord r;
    r.s_aug = s_aug;
    r.q = question.question;
    r.schema_ddl = schema_ddl;
    r.p = build_task_prompt(config.templates, schema_ddl, r.q);
    r.cot = std::move(*cot);
    r.ed = execution_difficulty(r.p, s_aug, llm, db, handle, config.ed_k, config.timeout,
                                config.temperature);
    try {
      r.cd = sql::classify_components(s_aug);
    } catch (const sql::ParseError& e) {
      fail(tag + "component classifier cannot parse the query: " + e.what());
      continue;
    }
    r.provenance = {seed.id, std::string(strategy.name), std::string(style_info(question.style).name),
                    seed.db_id, seed_rng};
    out.records.push_back(std::move(r));
  }
  out.tally.records = out.records.size();
  return out;
}

void add(RunReport& total, const RunReport& part) {
  total.seeds_rejected += part.seeds_rejected;
  total.generated += part.generated;
  total.filtered += part.filtered;
  total.question_ok += part.question_ok;
  total.cot_ok += part.cot_ok;
  total.records += part.records;
  total.failures.insert(total.failures.end(), part.failures.begin(), part.failures.end());
}

}  // namespace

RunReport run_pipeline(const std::vector<Seed>& seeds, const PipelineConfig& config,
                       llm::LlmClient& llm, db::DatabaseManager& db, db::ConnectionHandle handle,
                       const RecordSink& sink) {
  config.validate();
  RunReport report;
  report.seeds = seeds.size();
  if (seeds.empty()) return report;

  const std::string schema_ddl = db.get_ddl(handle);
  const auto embedder = retrieval::RetrieverModel::untrained();

  // Finished seeds wait here until every earlier seed has been emitted.
  std::mutex mutex;
  std::map<std::size_t, SeedResult> done;
  std::size_t next_emit = 0;
  std::atomic<std::size_t> next_seed{0};
  std::exception_ptr fatal;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next_seed.fetch_add(1);
      if (i >= seeds.size()) return;
      SeedResult result;
      try {
        result = process_seed(seeds[i], i, config, llm, db, handle, schema_ddl, embedder);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!fatal) fatal = std::current_exception();
        next_seed.store(seeds.size());
        return;
      }
      std::lock_guard lock(mutex);
      done.emplace(i, std::move(result));
      while (!fatal && done.count(next_emit)) {
        auto node = done.extract(next_emit++);
        add(report, node.mapped().tally);
        for (const auto& r : node.mapped().records) sink(r);
      }
    }
  };

  const int jobs = std::min<int>(config.jobs, static_cast<int>(seeds.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (fatal) std::rethrow_exception(fatal);
  return report;
}

RunReport run_pipeline_to_file(const std::vector<Seed>& seeds, const PipelineConfig& config,
                               llm::LlmClient& llm, db::DatabaseManager& db,
                               db::ConnectionHandle handle, const std::string& output_path) {
  std::ofstream out(output_path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open output file " + output_path);
  auto report = run_pipeline(seeds, config, llm, db, handle, [&](const AugmentedRecord& r) {
    out << to_jsonl_line(r);
    out.flush();
  });
  if (!out) throw Error("failed writing " + output_path);
  return report;
}

DryRunPrompts dry_run_prompts(const Seed& seed, const PipelineConfig& config,
                              db::DatabaseManager& db, db::ConnectionHandle handle) {
  config.validate();
  const std::uint64_t seed_rng = Rng::derive(config.rng_seed, 0);
  Rng rng(seed_rng);
  const std::string schema_ddl = db.get_ddl(handle);
  const AugmentationStrategy& strategy = sample_strategy(rng, config.strategies);
  std::vector<db::SampledValue> values;
  if (config.values_per_prompt > 0) {
    try {
      values = db.sample_values(handle, static_cast<std::size_t>(config.values_per_prompt), rng.next());
    } catch (const db::EmptyDatabaseError&) {
      values.clear();
    }
  }
  const std::string placeholder = "<question chosen from the generated candidates>";
  DryRunPrompts p;
  p.aug = build_aug_prompt(config.templates, schema_ddl, values, strategy, seed.sql);
  p.nl = build_nl_prompt(config.templates, schema_ddl, sample_style(rng, config.styles), seed.sql);
  p.cot = build_cot_prompt(config.templates, schema_ddl, placeholder, seed.sql);
  p.task = build_task_prompt(config.templates, schema_ddl, placeholder);
  return p;
}

}  // namespace t2sf::pipeline
