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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "compositional.h"
#include "fixtures.h"
#include "pipeline_script.h"
#include "revalidate.h"
#include "synthetic.h"
#include "t2sf/common/rng.h"
#include "t2sf/db/database_manager.h"
#include "t2sf/llm/client.h"
#include "t2sf/llm/mock_backend.h"
#include "t2sf/pipeline/run.h"
#include "t2sf/pipeline/stages.h"
#include "t2sf/retrieval/infonce.h"
#include "t2sf/retrieval/knowledge_base.h"
#include "t2sf/retrieval/trainer.h"
#include "t2sf/sql/corpus_stats.h"
#include "t2sf/sql/features.h"
#include "t2sf/sql/masking.h"

namespace {

using namespace t2sf;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& check, double limit_s = 0) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit_s > 0 && secs >= limit_s) {
    o.pass = false;
    o.detail += fmt::format("; took {:.2f}s, limit {:.0f}s", secs, limit_s);
  }
  if (!o.pass) ++failures;
  std::cout << fmt::format("{} {} ({:.2f}s) {}", o.pass ? "PASS" : "FAIL", name, secs, o.detail)
            << std::endl;
}

std::unique_ptr<llm::LlmClient> mock_client(const nlohmann::json& script) {
  auto client = std::make_unique<llm::LlmClient>(
      std::make_shared<llm::MockBackend>(llm::MockScript::from_json(script)));
  client->set_sleeper([](std::chrono::milliseconds) {});
  return client;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- corpus statistics ---------------------------------------------------

// Accepts JSON arrays of objects with a "query" field (the public dataset
// layout) or one query per line. Several files may be joined with ':'.
std::vector<std::string> load_reference_queries(const std::string& paths) {
  std::vector<std::string> out;
  std::stringstream list(paths);
  std::string path;
  while (std::getline(list, path, ':')) {
    if (path.empty()) continue;
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
      for (const auto& item : nlohmann::json::parse(text)) {
        out.push_back(item.is_string() ? item.get<std::string>() : item.at("query").get<std::string>());
      }
    } else {
      std::stringstream lines(text);
      std::string line;
      while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(line);
      }
    }
  }
  return out;
}

Outcome check_reference_corpus(const std::string& paths) {
  const auto corpus = load_reference_queries(paths);
  const auto s = sql::corpus_stats(corpus);
  struct Row {
    const char* name;
    double value, target, tol;
  };
  const std::vector<Row> rows = {
      {"window", s.pct_window, 0.00, 0.05},      {"set_op", s.pct_set_op, 6.07, 0.5},
      {"subquery", s.pct_subquery, 15.59, 1.5},  {"aggregation", s.pct_aggregation, 22.6, 1.0},
      {"case", s.avg_case, 0.00, 0.02},          {"where", s.avg_where, 0.86, 0.05},
      {"join", s.avg_join, 0.71, 0.05},
  };
  Outcome o{true, fmt::format("{} queries, {} unparsed;", s.size, s.parse_failures)};
  for (const auto& r : rows) {
    const bool ok = std::abs(r.value - r.target) <= r.tol;
    o.pass = o.pass && ok;
    o.detail += fmt::format(" {}={:.2f}{}", r.name, r.value, ok ? "" : fmt::format("(want {}±{})", r.target, r.tol));
  }
  return o;
}

Outcome check_compositional_corpus() {
  const auto corpus = testing::compositional_corpus(200, 7);
  std::vector<std::string> sqls;
  sql::CorpusStats want;
  want.size = corpus.size();
  std::size_t per_query_mismatch = 0;
  for (const auto& q : corpus) {
    sqls.push_back(q.sql);
    if (sql::extract_features(q.sql) != q.expected) ++per_query_mismatch;
    want.n_window += q.expected.has_window;
    want.n_set_op += q.expected.has_set_op;
    want.n_subquery += q.expected.has_subquery;
    want.n_aggregation += q.expected.has_aggregation;
    want.total_case += q.expected.case_count;
    want.total_where += q.expected.where_count;
    want.total_join += q.expected.join_count;
  }
  // Every query must also run on the fixture, so the corpus is real SQL.
  testing::TempDir dir;
  const auto path = testing::make_concert_db(dir);
  std::size_t not_running = 0;
  for (const auto& s : sqls) not_running += !testing::sqlite_rows(path, s).has_value();

  const auto got = sql::corpus_stats(sqls);
  const double n = static_cast<double>(want.size);
  const bool totals = got.size == want.size && got.parse_failures == 0 && got.n_window == want.n_window &&
                      got.n_set_op == want.n_set_op && got.n_subquery == want.n_subquery &&
                      got.n_aggregation == want.n_aggregation && got.total_case == want.total_case &&
                      got.total_where == want.total_where && got.total_join == want.total_join;
  const bool figures = got.pct_window == 100.0 * want.n_window / n &&
                       got.pct_set_op == 100.0 * want.n_set_op / n &&
                       got.pct_subquery == 100.0 * want.n_subquery / n &&
                       got.pct_aggregation == 100.0 * want.n_aggregation / n &&
                       got.avg_case == want.total_case / n && got.avg_where == want.total_where / n &&
                       got.avg_join == want.total_join / n;
  return {totals && figures && per_query_mismatch == 0 && not_running == 0,
          fmt::format("synthetic substitute (reference corpus not available): 200 queries, "
                      "window={} set_op={} subquery={} aggregation={} case={} where={} join={}; "
                      "per-query mismatches={} non-executing={}",
                      got.n_window, got.n_set_op, got.n_subquery, got.n_aggregation, got.total_case,
                      got.total_where, got.total_join, per_query_mismatch, not_running)};
}

// --- execution difficulty ------------------------------------------------

Outcome check_execution_difficulty() {
  testing::TempDir dir;
  const auto path = testing::make_concert_db(dir);
  db::DatabaseManager mgr;
  const auto h = mgr.connect_db({"sqlite", path});
  const std::string ref = "SELECT name FROM singer WHERE age > 40";
  const std::string hit = testing::fenced("SELECT name FROM singer WHERE age >= 41");
  const std::string miss = testing::fenced("SELECT name FROM singer WHERE age > 50");
  std::vector<double> got;
  for (int hits : {8, 2, 0}) {
    std::vector<std::string> replies(8, miss);
    for (int i = 0; i < hits; ++i) replies[i] = hit;
    auto client = mock_client({{"rules", {{{"match", "Translate"}, {"responses", replies}}}}});
    got.push_back(pipeline::execution_difficulty("Translate the question", ref, *client, mgr, h, 8));
  }
  return {got == std::vector<double>{0.0, 0.75, 1.0},
          fmt::format("n=8,2,0 -> {}", fmt::join(got, ", "))};
}

// --- execution filter ----------------------------------------------------

Outcome check_filter() {
  testing::TempDir dir;
  const auto path = testing::make_concert_db(dir);
  std::vector<std::string> cands;
  const char* columns[] = {"name", "country", "age", "song_name", "singer_id"};
  for (int i = 0; i < 60; ++i) {
    switch (i % 4) {
      case 0: cands.push_back(fmt::format("SELECT {} FROM singer WHERE age > {}", columns[i % 5], 20 + i)); break;
      case 1: cands.push_back(fmt::format("SELECT count(*) FROM concert WHERE year = '{}'", 2000 + i)); break;
      case 2:
        cands.push_back(fmt::format(
            "SELECT s.name, c.concert_name FROM singer AS s JOIN singer_in_concert AS x ON s.singer_id = "
            "x.singer_id JOIN concert AS c ON x.concert_id = c.concert_id WHERE c.concert_id <= {}", i % 5));
        break;
      default: cands.push_back(fmt::format("SELECT name, capacity FROM stadium ORDER BY capacity LIMIT {}", i)); break;
    }
  }
  for (int i = 0; i < 15; ++i) {
    const char* syntax[] = {"SELEC name FROM singer", "SELECT name FROM", "SELECT (age FROM singer",
                            "SELECT name FROM singer WHERE", "SELECT * FROM singer GROUP"};
    cands.push_back(fmt::format("{} -- {}", syntax[i % 5], i));
  }
  for (int i = 0; i < 15; ++i) {
    const char* semantic[] = {"SELECT salary FROM singer", "SELECT name FROM singers",
                              "SELECT name FROM singer WHERE nosuch > 1", "SELECT nofunc(age) FROM singer",
                              "SELECT count(*) FROM concert AS c JOIN ghost AS g ON c.id = g.id"};
    cands.push_back(fmt::format("{} -- {}", semantic[i % 5], i));
  }
  for (int i = 0; i < 10; ++i) {
    cands.push_back(fmt::format(
        "WITH RECURSIVE c(x) AS (SELECT 1 UNION ALL SELECT x + 1 FROM c WHERE x < {}) SELECT count(*) FROM c",
        400000000 + i));
  }
  const db::Millis timeout{200};
  db::DatabaseManager mgr;
  const auto h = mgr.connect_db({"sqlite", path});
  const auto kept = pipeline::execution_filter(cands, mgr, h, timeout, 4);

  std::vector<std::string> direct;
  for (const auto& c : cands) {
    const auto o = mgr.execute_sql(h, c, timeout);
    if (db::succeeded(o) && std::get<db::ExecutionResult>(o).elapsed <= timeout) direct.push_back(c);
  }
  std::size_t valid_kept = 0;
  for (std::size_t i = 0; i < 60; ++i) valid_kept += std::count(kept.begin(), kept.end(), cands[i]) > 0;
  return {kept == direct && valid_kept == 60 && kept.size() == 60,
          fmt::format("filter kept {}, direct execution passed {}, valid kept {}/60", kept.size(),
                      direct.size(), valid_kept)};
}

// --- contrastive gradient ------------------------------------------------

retrieval::SparseVector random_features(Rng& rng, std::size_t f) {
  retrieval::SparseVector x;
  for (std::uint32_t i = 0; i < f; ++i) {
    if (rng.uniform01() < 0.5) x.entries.push_back({i, 1.0 + static_cast<double>(rng.uniform_index(3))});
  }
  if (x.entries.empty()) x.entries.push_back({static_cast<std::uint32_t>(rng.uniform_index(f)), 1.0});
  return x;
}

Outcome check_gradient() {
  using retrieval::RetrieverModel;
  Rng rng(99);
  constexpr std::size_t kF = 8, kDim = 4;
  constexpr double kH = 1e-5;
  double worst = 0;
  for (int instance = 0; instance < 50; ++instance) {
    std::vector<double> p(kF * kDim);
    for (double& w : p) w = rng.uniform01() * 2 - 1;
    const RetrieverModel model(kF, kDim, "", p);
    std::vector<retrieval::ContrastiveSample> batch(1 + rng.uniform_index(3));
    for (auto& s : batch) {
      s.query = random_features(rng, kF);
      s.positive = random_features(rng, kF);
      const std::size_t negs = 1 + rng.uniform_index(4);
      for (std::size_t j = 0; j < negs; ++j) s.negatives.push_back(random_features(rng, kF));
    }
    const double tau = 0.05 + rng.uniform01();
    const auto analytic = retrieval::infonce_grad(model, batch, tau).to_dense(kF, kDim);
    double diff = 0, scale = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      auto plus = p, minus = p;
      plus[i] += kH;
      minus[i] -= kH;
      const double numeric = (retrieval::infonce_batch_loss(RetrieverModel(kF, kDim, "", plus), batch, tau) -
                              retrieval::infonce_batch_loss(RetrieverModel(kF, kDim, "", minus), batch, tau)) /
                             (2 * kH);
      diff = std::max(diff, std::abs(analytic[i] - numeric));
      scale = std::max({scale, std::abs(analytic[i]), std::abs(numeric)});
    }
    worst = std::max(worst, scale > 0 ? diff / scale : diff);
  }
  return {worst < 1e-4, fmt::format("50 instances, max relative error {:.3g}", worst)};
}

// --- retrieval properties --------------------------------------------------

Outcome check_retrieval() {
  using retrieval::RetrieverModel;
  using retrieval::TrainingPair;
  const std::uint64_t seed = 11;
  const auto pairs = testing::synthetic_pairs(600, seed);
  std::vector<TrainingPair> train, held;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    (i < 500 ? train : held).push_back({pairs[i].question, pairs[i].sql});
  }
  const auto schema = testing::synthetic_schema();
  const auto untrained = RetrieverModel::untrained();
  const auto trained = retrieval::train_retriever(train, retrieval::TrainingConfig{}, untrained).model;
  const auto kb = retrieval::build_kb(train, trained);
  const auto kb_untrained = retrieval::build_kb(train, untrained);

  // (a) Self-retrieval with the gold SQL. Entries that share a masked
  // skeleton are indistinguishable by construction, so a hit in the same
  // skeleton group at similarity 1 counts; a one-per-skeleton KB checks ids.
  std::size_t self_ok = 0;
  for (const auto& e : kb.entries) {
    const auto top = retrieval::upper_limit_retrieve(kb, trained, e.s, 1);
    if (!top.empty() && kb.entries[top[0].index].masked_s == e.masked_s &&
        std::abs(top[0].similarity - 1.0) < 1e-9) {
      ++self_ok;
    }
  }
  std::vector<TrainingPair> unique;
  std::set<std::string> seen;
  for (const auto& e : kb.entries) {
    if (seen.insert(e.masked_s.text).second) unique.push_back({e.q, e.s});
  }
  const auto kb_unique = retrieval::build_kb(unique, trained);
  std::size_t unique_ok = 0;
  for (const auto& e : kb_unique.entries) {
    const auto top = retrieval::upper_limit_retrieve(kb_unique, trained, e.s, 1);
    unique_ok += !top.empty() && top[0].id == e.id;
  }
  const bool a = self_ok == kb.entries.size() && unique_ok == kb_unique.entries.size();

  // (b) Held-out question -> structure accuracy.
  auto accuracy = [&](const retrieval::KnowledgeBase& base, const RetrieverModel& m) {
    std::size_t ok = 0;
    for (const auto& p : held) {
      const auto top = retrieval::retrieve(base, m, p.question, schema, 1);
      ok += !top.empty() && base.entries[top[0].index].masked_s == sql::mask_sql(p.sql);
    }
    return 100.0 * ok / held.size();
  };
  const double acc_trained = accuracy(kb, trained);
  const double acc_untrained = accuracy(kb_untrained, untrained);
  const bool b = acc_trained >= acc_untrained + 10;

  // (c) Pairs that differ only in literal values rank the KB identically.
  // Skeletons without literal slots cannot be perturbed and are passed over.
  const auto bases = testing::synthetic_pairs(1000, seed + 1);
  std::size_t invariant = 0, compared = 0;
  for (std::size_t i = 0; i < bases.size() && compared < 100; ++i) {
    const auto& base = bases[i];
    testing::SyntheticPair other;
    for (std::uint64_t stream = 0;; ++stream) {
      Rng rng(Rng::derive(seed + 1000 + i, stream));
      other = testing::synthetic_pair(base.skeleton, base.paraphrase, base.domain, rng);
      if (other.question != base.question || stream > 50) break;
    }
    if (other.question == base.question) continue;
    ++compared;
    const bool same_mask = sql::mask_question(base.question, schema) == sql::mask_question(other.question, schema);
    auto ids = [&](const std::vector<retrieval::RetrievalHit>& hits) {
      std::vector<std::int64_t> v;
      for (const auto& h : hits) v.push_back(h.id);
      return v;
    };
    const bool same_q = ids(retrieval::retrieve(kb, trained, base.question, schema, 10)) ==
                        ids(retrieval::retrieve(kb, trained, other.question, schema, 10));
    const bool same_s = ids(retrieval::upper_limit_retrieve(kb, trained, base.sql, 10)) ==
                        ids(retrieval::upper_limit_retrieve(kb, trained, other.sql, 10));
    invariant += same_mask && same_q && same_s;
  }
  const bool c = compared == 100 && invariant == 100;

  return {a && b && c,
          fmt::format("{} pairs; (a) self-retrieval {}/{} skeleton-group, {}/{} unique ids; "
                      "(b) held-out top-1 trained {:.1f}% vs untrained {:.1f}%; (c) invariant {}/{}",
                      pairs.size(), self_ok, kb.entries.size(), unique_ok, kb_unique.entries.size(),
                      acc_trained, acc_untrained, invariant, compared)};
}

// --- hermetic pipeline run ------------------------------------------------

Outcome check_end_to_end() {
  testing::TempDir dir;
  const auto path = testing::make_concert_db(dir);
  db::DatabaseManager mgr;
  const auto h = mgr.connect_db({"sqlite", path});
  const auto plans = testing::concert_seed_plans();
  const auto script = testing::build_pipeline_script(plans, mgr.get_ddl(h), pipeline::PromptTemplates::defaults());
  std::vector<pipeline::Seed> seeds;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    seeds.push_back({"seed-" + std::to_string(i), plans[i].seed_sql, "concert"});
  }
  auto run = [&](const std::string& out) {
    auto client = mock_client(script);
    return pipeline::run_pipeline_to_file(seeds, pipeline::PipelineConfig{}, *client, mgr, h, out);
  };
  const auto first = run(dir.file("a.jsonl"));
  const auto second = run(dir.file("b.jsonl"));
  const auto records = pipeline::read_records(dir.file("a.jsonl"));
  std::size_t bad = 0;
  std::string first_problem;
  for (const auto& r : records) {
    const auto problems = testing::revalidate_record(r, path, 8);
    if (!problems.empty()) {
      ++bad;
      if (first_problem.empty()) first_problem = problems.front();
    }
  }
  const bool identical = read_file(dir.file("a.jsonl")) == read_file(dir.file("b.jsonl")) && first == second;
  return {seeds.size() == 20 && !records.empty() && bad == 0 && identical,
          fmt::format("20 seeds, {} records, {} failing re-validation{}, rerun {}", records.size(), bad,
                      first_problem.empty() ? "" : " (" + first_problem + ")",
                      identical ? "byte-identical" : "DIFFERS")};
}

// --- schema cache -----------------------------------------------------------

Outcome check_schema_cache() {
  testing::TempDir dir;
  const auto path = testing::make_concert_db(dir);
  db::DatabaseManager mgr;
  const auto h = mgr.connect_db({"sqlite", path});
  const auto first = mgr.get_schema(h);
  const auto before = mgr.stats().catalog_queries;
  bool equal = true;
  for (int i = 0; i < 10; ++i) equal = equal && mgr.get_schema(h).equivalent(first);
  const auto issued = mgr.stats().catalog_queries - before;
  return {before > 0 && issued == 0 && equal,
          fmt::format("first call {} catalog queries, 10 repeats {}, metadata {}", before, issued,
                      equal ? "equal" : "DIFFERS")};
}

}  // namespace

int main() {
  if (const char* spider = std::getenv("T2SF_REFERENCE_CORPUS"); spider && *spider) {
    report("corpus-statistics", [&] { return check_reference_corpus(spider); }, 60);
  } else {
    report("corpus-statistics", check_compositional_corpus, 60);
  }
  report("execution-difficulty", check_execution_difficulty);
  report("filter-soundness", check_filter);
  report("contrastive-gradient", check_gradient, 5);
  report("retrieval-properties", check_retrieval, 120);
  report("end-to-end-run", check_end_to_end);
  report("schema-cache", check_schema_cache);
  std::cout << (failures == 0 ? "ALL PASS" : fmt::format("{} FAILED", failures)) << std::endl;
  return failures == 0 ? 0 : 1;
}
