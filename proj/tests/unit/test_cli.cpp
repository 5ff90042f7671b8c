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

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "fixtures.h"
#include "pipeline_script.h"
#include "revalidate.h"
#include "synthetic.h"
#include "t2sf/cli/app.h"
#include "t2sf/cli/config.h"
#include "t2sf/common/strings.h"
#include "t2sf/db/database_manager.h"
#include "t2sf/retrieval/knowledge_base.h"

namespace t2sf::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "text2sql-flow");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { db_ = t2sf::testing::make_concert_db(dir_); }

  // Seeds and a matching mock script for the concert plan.
  void write_pipeline_inputs(std::size_t n_seeds) {
    auto plans = t2sf::testing::concert_seed_plans();
    plans.resize(n_seeds);
    db::DatabaseManager manager;
    const auto ddl = manager.get_ddl(manager.connect_db({"sqlite", db_}));
    write_file(dir_.file("script.json"),
               t2sf::testing::build_pipeline_script(plans, ddl, pipeline::PromptTemplates::defaults()).dump());
    std::string seeds;
    for (const auto& p : plans) seeds += p.seed_sql + "\n";
    write_file(dir_.file("seeds.sql"), seeds);
  }

  void write_pairs(std::size_t n) {
    std::string text;
    for (const auto& p : t2sf::testing::synthetic_pairs(n, 21)) {
      text += nlohmann::json{{"question", p.question}, {"sql", p.sql}}.dump() + "\n";
    }
    write_file(dir_.file("pairs.jsonl"), text);
  }

  t2sf::testing::TempDir dir_;
  std::string db_;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"exec", "--jobs", "0", "SELECT 1"}).code, kExitUsage);
  EXPECT_EQ(cli({"--help"}).code, kExitOk);
  const auto missing = cli({"exec", "--db", dir_.file("nope.sqlite"), "SELECT 1"});
  EXPECT_EQ(missing.code, kExitUsage);
  EXPECT_NE(missing.err.find("database not found"), std::string::npos);
}

TEST_F(CliTest, Exec) {
  const auto r = cli({"exec", "--db", db_, "SELECT 1"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "{\"columns\":[\"1\"],\"rows\":[[1]]}\n");
  const auto two = cli({"--jobs", "2", "exec", "--db", db_, "SELECT count(*) FROM singer", "SELEC"});
  EXPECT_EQ(two.code, kExitRuntime);
  const auto l = lines_of(two.out);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], "{\"columns\":[\"count(*)\"],\"rows\":[[6]]}");
  EXPECT_EQ(nlohmann::json::parse(l[1])["error"]["kind"], "syntax");
}

TEST_F(CliTest, StatsAndClassify) {
  write_file(dir_.file("empty.sql"), "");
  const auto empty = cli({"stats", dir_.file("empty.sql"), "--json"});
  EXPECT_EQ(empty.code, kExitOk);
  const auto ej = nlohmann::json::parse(empty.out);
  EXPECT_EQ(ej["size"], 0);
  EXPECT_EQ(ej["aggregation_pct"], 0.0);

  write_file(dir_.file("c.sql"),
             "SELECT count(*) FROM singer\n{\"sql\": \"SELECT name FROM singer WHERE age > 30\"}\nnot sql at all\n");
  const auto s = nlohmann::json::parse(cli({"stats", dir_.file("c.sql"), "--json", "--name", "mine"}).out);
  EXPECT_EQ(s["dataset"], "mine");
  EXPECT_EQ(s["size"], 2);
  EXPECT_EQ(s["parse_failures"], 1);
  EXPECT_EQ(s["aggregation_pct"], 50.0);
  EXPECT_EQ(s["where_avg"], 0.5);

  const auto c = cli({"classify", dir_.file("c.sql")});
  EXPECT_EQ(c.code, kExitOk);
  const auto l = lines_of(c.out);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], "{\"index\":0,\"cd\":\"easy\"}");
  EXPECT_EQ(l[1], "{\"index\":1,\"cd\":\"easy\"}");
  EXPECT_TRUE(nlohmann::json::parse(l[2]).contains("error"));
  EXPECT_EQ(cli({"classify", dir_.file("c.sql")}).out, c.out);
  EXPECT_EQ(cli({"classify", dir_.file("empty.sql")}).out, "");
}

TEST_F(CliTest, AugmentEndToEnd) {
  write_pipeline_inputs(6);
  const std::string out = dir_.file("out.jsonl");
  const auto r = cli({"augment", "--db", db_, "--seeds", dir_.file("seeds.sql"), "--out", out, "--mock-script",
                      dir_.file("script.json"), "--report", dir_.file("report.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_EQ(report["seeds"], 6);
  EXPECT_EQ(nlohmann::json::parse(read_file(dir_.file("report.json"))), report);
  const auto records = pipeline::read_records(out);
  EXPECT_EQ(records.size(), report["records"].get<std::size_t>());
  EXPECT_GT(records.size(), 0u);
  for (const auto& rec : records) {
    EXPECT_TRUE(t2sf::testing::revalidate_record(rec, db_, 8).empty()) << rec.s_aug;
    EXPECT_EQ(rec.provenance.db_id, "concert");
    EXPECT_EQ(rec.provenance.rng_seed, Rng::derive(42, std::stoul(rec.provenance.seed_id.substr(5))));
  }
  const std::string first = read_file(out);
  EXPECT_EQ(cli({"augment", "--db", db_, "--seeds", dir_.file("seeds.sql"), "--out", out, "--mock-script",
                 dir_.file("script.json")})
                .out,
            r.out);
  EXPECT_EQ(read_file(out), first);
  cli({"--seed", "7", "augment", "--db", db_, "--seeds", dir_.file("seeds.sql"), "--out", out, "--mock-script",
       dir_.file("script.json")});
  EXPECT_NE(read_file(out), first);
}

TEST_F(CliTest, AugmentDryRunAndFailures) {
  write_pipeline_inputs(2);
  const std::string out = dir_.file("dry.jsonl");
  const auto dry = cli({"augment", "--db", db_, "--seeds", dir_.file("seeds.sql"), "--out", out, "--dry-run"});
  EXPECT_EQ(dry.code, kExitOk);
  EXPECT_NE(dry.out.find("Original query:\nSELECT count(*) FROM singer\n"), std::string::npos);
  EXPECT_NE(dry.out.find("=== task prompt ==="), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(out));

  EXPECT_EQ(cli({"augment", "--seeds", dir_.file("seeds.sql"), "--out", out}).code, kExitUsage);
  EXPECT_EQ(cli({"augment", "--db", db_, "--seeds", dir_.file("seeds.sql"), "--out", out}).code, kExitUsage);

  // A script that never answers: nothing survives, which is a runtime failure.
  write_file(dir_.file("silent.json"), R"({"rules": [], "fallback": "no idea"})");
  const auto silent = cli({"augment", "--db", db_, "--seeds", dir_.file("seeds.sql"), "--out", out,
                           "--mock-script", dir_.file("silent.json")});
  EXPECT_EQ(silent.code, kExitRuntime);
  EXPECT_EQ(nlohmann::json::parse(silent.out)["records"], 0);

  write_file(dir_.file("none.sql"), "\n");
  EXPECT_EQ(cli({"augment", "--db", db_, "--seeds", dir_.file("none.sql"), "--out", out, "--mock-script",
                 dir_.file("silent.json")})
                .code,
            kExitOk);
}

TEST_F(CliTest, ConfigFileAndOverrides) {
  write_pipeline_inputs(3);
  std::filesystem::create_directory(dir_.file("conf"));
  std::filesystem::copy_file(db_, dir_.file("conf/concert.sqlite"));
  std::filesystem::copy_file(dir_.file("seeds.sql"), dir_.file("conf/seeds.sql"));
  std::filesystem::copy_file(dir_.file("script.json"), dir_.file("conf/script.json"));
  write_file(dir_.file("conf/run.json"), R"({
    "database": {"path": "concert.sqlite", "timeout_ms": 2000},
    "llm": {"backend": "mock", "mock_script": "script.json"},
    "pipeline": {"seeds": "seeds.sql", "output": "out.jsonl", "db_id": "cfg"},
    "seed": 42
  })");
  const auto cfg = load_run_config(dir_.file("conf/run.json"));
  EXPECT_EQ(cfg.database.location, dir_.file("conf/concert.sqlite"));
  EXPECT_EQ(cfg.database.default_timeout.count(), 2000);

  const auto r = cli({"--config", dir_.file("conf/run.json"), "augment"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto records = pipeline::read_records(dir_.file("conf/out.jsonl"));
  ASSERT_FALSE(records.empty());
  EXPECT_EQ(records[0].provenance.db_id, "cfg");

  const auto o = cli({"--config", dir_.file("conf/run.json"), "augment", "--db-id", "flag", "--out",
                      dir_.file("flag.jsonl")});
  ASSERT_EQ(o.code, kExitOk);
  EXPECT_EQ(pipeline::read_records(dir_.file("flag.jsonl"))[0].provenance.db_id, "flag");

  write_file(dir_.file("bad.json"), R"({"database": {"pth": "x"}})");
  EXPECT_EQ(cli({"--config", dir_.file("bad.json"), "exec", "SELECT 1"}).code, kExitUsage);
  write_file(dir_.file("bad2.json"), R"({"pipeline": {"strategies": ["sideways"]}})");
  EXPECT_THROW(load_run_config(dir_.file("bad2.json")), ConfigError);
  write_file(dir_.file("bad3.json"), R"({"pipeline": {"ed_k": "eight"}})");
  EXPECT_THROW(load_run_config(dir_.file("bad3.json")), ConfigError);
}

TEST_F(CliTest, TrainBuildRetrieve) {
  write_pairs(500);
  const std::string model = dir_.file("m.bin"), model2 = dir_.file("m2.bin");
  const auto t = cli({"train-retriever", "--data", dir_.file("pairs.jsonl"), "--out", model});
  ASSERT_EQ(t.code, kExitOk) << t.err;
  const auto tj = nlohmann::json::parse(t.out);
  EXPECT_EQ(tj["epochs_completed"], 3);
  EXPECT_LT(tj["final_loss"].get<double>(), tj["validation_loss"][0].get<double>());
  EXPECT_TRUE(std::filesystem::exists(model));
  ASSERT_EQ(cli({"train-retriever", "--data", dir_.file("pairs.jsonl"), "--out", model2}).out, t.out);
  EXPECT_EQ(read_file(model), read_file(model2));

  const std::string kb = dir_.file("kb.jsonl");
  const auto b = cli({"build-kb", "--records", dir_.file("pairs.jsonl"), "--model", model, "--out", kb});
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_EQ(nlohmann::json::parse(b.out)["added"], 500);

  const auto r = cli({"retrieve", "--kb", kb, "--model", model, "--question", "How many singers are there?", "-k", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto l = lines_of(r.out);
  ASSERT_EQ(l.size(), 5u);
  double last = 2;
  for (const auto& line : l) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("id"));
    EXPECT_LE(j["similarity"].get<double>(), last);
    last = j["similarity"].get<double>();
  }
  const auto up = cli({"retrieve", "--kb", kb, "--model", model, "--sql", "SELECT count(*) FROM singer", "-k", "1"});
  EXPECT_NEAR(nlohmann::json::parse(up.out)["similarity"].get<double>(), 1.0, 1e-9);

  const auto p = cli({"retrieve", "--kb", kb, "--model", model, "--db", db_, "--question", "Oldest singer?",
                      "-k", "3", "--prompt"});
  ASSERT_EQ(p.code, kExitOk) << p.err;
  EXPECT_NE(p.out.find("CREATE TABLE"), std::string::npos);
  EXPECT_NE(p.out.find("Oldest singer?"), std::string::npos);

  // The KB was built with the trained model; the untrained one does not match.
  EXPECT_EQ(cli({"retrieve", "--kb", kb, "--question", "x"}).code, kExitRuntime);
  EXPECT_EQ(cli({"retrieve", "--kb", kb, "--model", model}).code, kExitUsage);
  write_file(dir_.file("one.jsonl"), R"({"question": "q", "sql": "SELECT 1"})" "\n");
  EXPECT_EQ(cli({"train-retriever", "--data", dir_.file("one.jsonl"), "--out", model}).code, kExitRuntime);
}

TEST_F(CliTest, KbFromDatasetRecordsKeepsProvenance) {
  write_pipeline_inputs(4);
  const std::string out = dir_.file("out.jsonl");
  ASSERT_EQ(cli({"augment", "--db", db_, "--seeds", dir_.file("seeds.sql"), "--out", out, "--mock-script",
                 dir_.file("script.json")})
                .code,
            kExitOk);
  const std::string kb = dir_.file("kb.jsonl");
  ASSERT_EQ(cli({"build-kb", "--records", out, "--out", kb}).code, kExitOk);
  const auto loaded = retrieval::KnowledgeBase::load(kb);
  ASSERT_FALSE(loaded.entries.empty());
  EXPECT_EQ(loaded.entries[0].source["db_id"], "concert");
}

}  // namespace
}  // namespace t2sf::cli
