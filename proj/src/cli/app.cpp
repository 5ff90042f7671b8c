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

#include "t2sf/cli/app.h"

#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "t2sf/cli/config.h"
#include "t2sf/common/strings.h"
#include "t2sf/db/database_manager.h"
#include "t2sf/retrieval/few_shot.h"
#include "t2sf/retrieval/knowledge_base.h"
#include "t2sf/sql/corpus_stats.h"
#include "t2sf/sql/hardness.h"

namespace t2sf::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Values given on the command line; each one, when set, replaces the config.
struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::optional<std::string> db;
  std::optional<std::string> seeds;
  std::optional<std::string> out;
  std::optional<std::string> report;
  std::optional<std::string> mock_script;
  std::optional<std::string> llm_backend;
  std::optional<std::string> db_id;
  std::optional<std::int64_t> timeout_ms;
  std::optional<std::string> data;
  std::optional<std::string> kb;
  std::optional<std::string> model;
  std::optional<int> epochs;
  std::optional<double> learning_rate;
  std::optional<double> temperature;
  std::optional<int> negatives;
  std::optional<int> batch_size;
};

RunConfig resolve(const Overrides& o) {
  RunConfig c = o.config_path.empty() ? RunConfig{} : load_run_config(o.config_path);
  auto set = [](const auto& flag, auto& field) {
    if (flag) field = *flag;
  };
  set(o.seed, c.seed);
  set(o.jobs, c.jobs);
  set(o.db, c.database.location);
  set(o.seeds, c.seeds_path);
  set(o.out, c.output_path);
  set(o.report, c.report_path);
  set(o.mock_script, c.llm.mock_script);
  set(o.llm_backend, c.llm.backend);
  set(o.db_id, c.db_id);
  set(o.data, c.train_data_path);
  set(o.kb, c.kb_path);
  set(o.model, c.model_path);
  set(o.epochs, c.training.epochs);
  set(o.learning_rate, c.training.learning_rate);
  set(o.temperature, c.training.temperature);
  set(o.negatives, c.training.negatives_per_sample);
  set(o.batch_size, c.training.batch_size);
  if (o.timeout_ms) {
    c.database.default_timeout = std::chrono::milliseconds(*o.timeout_ms);
    c.pipeline.timeout = c.database.default_timeout;
  }
  if (c.jobs < 1) throw ConfigError("jobs must be at least 1");
  c.pipeline.rng_seed = c.seed;
  c.pipeline.jobs = c.jobs;
  c.training.rng_seed = c.seed;
  c.database.max_connections = std::max(c.database.max_connections, c.jobs);
  if (!c.templates_path.empty()) {
    require_file(c.templates_path, "template file");
    c.pipeline.templates = pipeline::PromptTemplates::load(c.templates_path);
  }
  try {
    c.training.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  c.pipeline.validate();
  return c;
}

db::ConnectionHandle open_database(db::DatabaseManager& manager, const RunConfig& c) {
  const std::string& loc = c.database.location;
  const bool uri = loc == ":memory:" || loc.rfind("file:", 0) == 0;
  if (c.database.backend == "sqlite" && !uri) require_file(loc, "database");
  return manager.connect_db(c.database);
}

// Each non-blank line is either raw SQL or a JSON object carrying the SQL
// under "sql", "query" or "s_aug".
std::vector<std::string> read_sql_lines(const std::string& path) {
  std::vector<std::string> out;
  std::size_t line_no = 0;
  for (const auto& raw : read_lines(path)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() != '{') {
      out.emplace_back(line);
      continue;
    }
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(fmt::format("{}:{}: {}", path, line_no, e.what()));
    }
    bool found = false;
    for (const char* key : {"sql", "query", "s_aug"}) {
      if (j.contains(key) && j[key].is_string()) {
        out.push_back(j[key].get<std::string>());
        found = true;
        break;
      }
    }
    if (!found) throw Error(fmt::format("{}:{}: no 'sql', 'query' or 's_aug' field", path, line_no));
  }
  return out;
}

// Dataset records when every line is one, otherwise {question, sql} pairs
// (records contribute their q and s_aug).
struct TrainingData {
  std::vector<pipeline::AugmentedRecord> records;  // set when every line is a record
  std::vector<retrieval::TrainingPair> pairs;
};

TrainingData read_training_data(const std::string& path) {
  TrainingData d;
  bool all_records = true;
  std::size_t line_no = 0;
  for (const auto& raw : read_lines(path)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(fmt::format("{}:{}: {}", path, line_no, e.what()));
    }
    if (j.contains("s_aug")) {
      auto r = pipeline::record_from_json(j);
      d.pairs.push_back({r.q, r.s_aug});
      d.records.push_back(std::move(r));
    } else if (j.contains("question") && j.contains("sql")) {
      all_records = false;
      d.pairs.push_back({j["question"].get<std::string>(), j["sql"].get<std::string>()});
    } else {
      throw Error(fmt::format("{}:{}: expected a dataset record or a question/sql pair", path, line_no));
    }
  }
  if (!all_records) d.records.clear();
  return d;
}

retrieval::RetrieverModel load_model(const RunConfig& c) {
  if (!c.model_path.empty()) {
    require_file(c.model_path, "model file");
    return retrieval::RetrieverModel::load(c.model_path);
  }
  return retrieval::RetrieverModel::untrained(
      c.feature_count ? c.feature_count : retrieval::kDefaultFeatureCount,
      c.dim ? c.dim : retrieval::kDefaultDim,
      c.instruction.empty() ? std::string(retrieval::kDefaultInstruction) : c.instruction);
}

void write_json_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write " + path);
  f << text << '\n';
}

int cmd_augment(const Overrides& o, bool dry_run, std::ostream& out, std::ostream& err) {
  RunConfig c = resolve(o);
  require_file(c.seeds_path, "seed file");
  db::DatabaseManager manager;
  const auto handle = open_database(manager, c);
  const std::string db_id = c.db_id.empty() ? fs::path(c.database.location).stem().string() : c.db_id;
  const auto seeds = pipeline::load_seeds(c.seeds_path, db_id);

  if (dry_run) {
    if (seeds.empty()) return kExitOk;
    const auto p = pipeline::dry_run_prompts(seeds.front(), c.pipeline, manager, handle);
    out << "=== augmentation prompt ===\n" << p.aug << "\n\n=== question prompt ===\n" << p.nl
        << "\n\n=== chain-of-thought prompt ===\n" << p.cot << "\n\n=== task prompt ===\n" << p.task << "\n";
    return kExitOk;
  }

  if (c.output_path.empty()) throw ConfigError("no output path given");
  if (c.llm.backend == "mock") require_file(c.llm.mock_script, "mock script");
  const auto client = llm::make_client(c.llm);
  const auto report = pipeline::run_pipeline_to_file(seeds, c.pipeline, *client, manager, handle, c.output_path);
  const std::string text = pipeline::to_json(report).dump(2);
  out << text << "\n";
  if (!c.report_path.empty()) write_json_file(c.report_path, text);
  for (const auto& f : report.failures) err << "skipped " << f << "\n";
  if (report.records == 0 && !seeds.empty()) {
    err << "error: no records emitted\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_stats(const std::string& corpus, const std::string& name, bool as_json, std::ostream& out) {
  require_file(corpus, "corpus file");
  const auto stats = sql::corpus_stats(read_sql_lines(corpus));
  const std::string label = name.empty() ? fs::path(corpus).stem().string() : name;
  if (as_json) {
    out << sql::to_json(label, stats).dump() << "\n";
  } else {
    out << sql::format_stats_table({{label, stats}});
  }
  return kExitOk;
}

int cmd_classify(const std::string& file, std::ostream& out) {
  require_file(file, "SQL file");
  std::size_t index = 0;
  for (const auto& s : read_sql_lines(file)) {
    nlohmann::ordered_json line;
    line["index"] = index++;
    try {
      line["cd"] = sql::to_string(sql::classify_components(s));
    } catch (const sql::ParseError& e) {
      line["error"] = e.what();
    }
    out << line.dump() << "\n";
  }
  return kExitOk;
}

int cmd_build_kb(const Overrides& o, std::ostream& out) {
  const RunConfig c = resolve(o);
  require_file(c.train_data_path, "records file");
  if (c.kb_path.empty()) throw ConfigError("no knowledge base output path given");
  const auto model = load_model(c);
  const auto data = read_training_data(c.train_data_path);
  retrieval::KbBuildReport report;
  const auto kb = data.records.empty() ? retrieval::build_kb(data.pairs, model, &report)
                                       : retrieval::build_kb(data.records, model, &report);
  kb.save(c.kb_path);
  nlohmann::ordered_json j;
  j["added"] = report.added;
  j["skipped"] = json::array();
  for (const auto& [i, why] : report.skipped) j["skipped"].push_back({{"index", i}, {"reason", why}});
  j["model_version"] = kb.model_version;
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_train(const Overrides& o, std::ostream& out) {
  const RunConfig c = resolve(o);
  require_file(c.train_data_path, "training data");
  if (c.model_path.empty()) throw ConfigError("no model output path given");
  const auto data = read_training_data(c.train_data_path);
  RunConfig base_cfg = c;
  base_cfg.model_path.clear();
  const auto initial = load_model(base_cfg);
  const auto result = retrieval::train_retriever(data.pairs, c.training, initial);
  result.model.save(c.model_path);
  nlohmann::ordered_json j;
  j["pairs"] = data.pairs.size();
  j["skipped_pairs"] = result.report.skipped_pairs;
  j["epochs_completed"] = result.report.epochs_completed;
  j["train_loss"] = result.report.train_loss;
  j["validation_loss"] = result.report.validation_loss;
  j["final_loss"] = result.report.validation_loss.back();
  j["halted"] = result.report.halted;
  if (result.report.halted) j["diagnostics"] = result.report.diagnostics;
  j["model_version"] = result.model.version();
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_retrieve(const Overrides& o, const std::string& question, const std::string& gold_sql,
                 std::size_t k, bool prompt, std::ostream& out) {
  const RunConfig c = resolve(o);
  require_file(c.kb_path, "knowledge base");
  if (question.empty() == gold_sql.empty()) throw ConfigError("give exactly one of --question or --sql");
  const auto kb = retrieval::KnowledgeBase::load(c.kb_path);
  const auto model = load_model(c);

  db::DatabaseManager manager;
  std::optional<db::ConnectionHandle> handle;
  if (!c.database.location.empty()) handle = open_database(manager, c);
  if (prompt && !handle) throw ConfigError("--prompt needs --db for the schema");
  const db::SchemaMetadata schema = handle ? manager.get_schema(*handle) : db::SchemaMetadata{};

  const auto hits = question.empty() ? retrieval::upper_limit_retrieve(kb, model, gold_sql, k)
                                     : retrieval::retrieve(kb, model, question, schema, k);
  if (prompt) {
    std::vector<const retrieval::KnowledgeBaseEntry*> ranked;
    for (const auto& h : hits) ranked.push_back(&kb.entries[h.index]);
    out << retrieval::assemble_few_shot_prompt(ranked, retrieval::FewShotTemplate::defaults(),
                                               manager.get_ddl(*handle), question.empty() ? gold_sql : question,
                                               ranked.size())
        << "\n";
    return kExitOk;
  }
  for (const auto& h : hits) {
    nlohmann::ordered_json j;
    j["id"] = h.id;
    j["similarity"] = h.similarity;
    out << j.dump() << "\n";
  }
  return kExitOk;
}

int cmd_exec(const Overrides& o, std::vector<std::string> queries, const std::string& file,
             std::ostream& out) {
  const RunConfig c = resolve(o);
  if (!file.empty()) {
    require_file(file, "SQL file");
    for (auto& s : read_sql_lines(file)) queries.push_back(std::move(s));
  }
  if (queries.empty()) throw ConfigError("no SQL given");
  db::DatabaseManager manager;
  const auto handle = open_database(manager, c);
  const int parallelism = std::min(c.jobs, manager.config(handle).max_connections);
  const auto outcomes = manager.batch_sql_execution(handle, queries, std::nullopt, parallelism);
  bool any_failed = false;
  for (const auto& o : outcomes) {
    json j;
    if (const auto* r = std::get_if<db::ExecutionResult>(&o)) {
      j["columns"] = r->columns;
      j["rows"] = json::array();
      for (const auto& row : r->rows) {
        json cells = json::array();
        for (const auto& v : row) cells.push_back(db::to_json_value(v));
        j["rows"].push_back(std::move(cells));
      }
    } else {
      const auto& e = std::get<db::ExecutionError>(o);
      j["error"] = {{"kind", db::to_string(e.kind)}, {"message", e.message}};
      any_failed = true;
    }
    out << j.dump() << "\n";
  }
  return any_failed ? kExitRuntime : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Text-to-SQL data augmentation and structure-aware example retrieval"};
  app.name(args.empty() ? "text2sql-flow" : fs::path(args[0]).filename().string());
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--config", o.config_path, "JSON run configuration");
  app.add_option("--seed", o.seed, "RNG seed for randomized commands (default 42)");
  app.add_option("--jobs", o.jobs, "Concurrent seeds or queries")->check(CLI::PositiveNumber);

  auto* augment = app.add_subcommand("augment", "Run the augmentation pipeline over a seed file");
  bool dry_run = false;
  augment->add_option("--db", o.db, "SQLite database");
  augment->add_option("--seeds", o.seeds, "Seed file: one SQL per line or JSON Lines");
  augment->add_option("--out", o.out, "Output dataset (JSON Lines)");
  augment->add_option("--report", o.report, "Also write the run report here");
  augment->add_option("--mock-script", o.mock_script, "Scripted replies for the mock backend");
  augment->add_option("--llm-backend", o.llm_backend, "mock or http");
  augment->add_option("--db-id", o.db_id, "Database id written to provenance");
  augment->add_option("--timeout-ms", o.timeout_ms, "Execution timeout")->check(CLI::PositiveNumber);
  augment->add_flag("--dry-run", dry_run, "Print the prompts for the first seed and stop");

  auto* stats = app.add_subcommand("stats", "Complexity statistics of a SQL corpus");
  std::string corpus, stats_name;
  bool stats_json = false;
  stats->add_option("corpus", corpus, "SQL per line or JSON Lines")->required();
  stats->add_option("--name", stats_name, "Dataset label");
  stats->add_flag("--json", stats_json, "Print JSON instead of a table");

  auto* classify = app.add_subcommand("classify", "Component difficulty of each query");
  std::string classify_file;
  classify->add_option("file", classify_file, "SQL per line or JSON Lines")->required();

  auto* build_kb = app.add_subcommand("build-kb", "Build a retrieval knowledge base");
  build_kb->add_option("--records", o.data, "Dataset records or question/sql pairs (JSON Lines)");
  build_kb->add_option("--out", o.kb, "Knowledge base output (JSON Lines)");
  build_kb->add_option("--model", o.model, "Retriever model (default: untrained)");

  auto* train = app.add_subcommand("train-retriever", "Train the retriever projection");
  train->add_option("--data", o.data, "Dataset records or question/sql pairs (JSON Lines)");
  train->add_option("--out", o.model, "Model output");
  train->add_option("--epochs", o.epochs)->check(CLI::PositiveNumber);
  train->add_option("--lr", o.learning_rate)->check(CLI::PositiveNumber);
  train->add_option("--temperature", o.temperature)->check(CLI::PositiveNumber);
  train->add_option("--negatives", o.negatives)->check(CLI::PositiveNumber);
  train->add_option("--batch-size", o.batch_size)->check(CLI::PositiveNumber);

  auto* retrieve = app.add_subcommand("retrieve", "Top-k knowledge base entries for a question");
  std::string question, gold_sql;
  std::size_t k = 5;
  bool prompt = false;
  retrieve->add_option("--kb", o.kb, "Knowledge base");
  retrieve->add_option("--model", o.model, "Retriever model (default: untrained)");
  retrieve->add_option("--db", o.db, "Database whose schema masks the question");
  retrieve->add_option("--question", question, "Target question");
  retrieve->add_option("--sql", gold_sql, "Gold SQL (upper-limit ranking)");
  retrieve->add_option("-k", k, "Number of entries")->capture_default_str();
  retrieve->add_flag("--prompt", prompt, "Print the few-shot prompt instead of ids");

  auto* exec = app.add_subcommand("exec", "Execute SQL and print one JSON line per query");
  std::vector<std::string> queries;
  std::string exec_file;
  exec->add_option("--db", o.db, "SQLite database");
  exec->add_option("sql", queries, "Queries");
  exec->add_option("--file", exec_file, "SQL per line or JSON Lines");
  exec->add_option("--timeout-ms", o.timeout_ms, "Execution timeout")->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (*augment) return cmd_augment(o, dry_run, out, err);
    if (*stats) return cmd_stats(corpus, stats_name, stats_json, out);
    if (*classify) return cmd_classify(classify_file, out);
    if (*build_kb) return cmd_build_kb(o, out);
    if (*train) return cmd_train(o, out);
    if (*retrieve) return cmd_retrieve(o, question, gold_sql, k, prompt, out);
    if (*exec) return cmd_exec(o, queries, exec_file, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace t2sf::cli
