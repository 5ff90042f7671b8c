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

#include <cmath>
#include <set>

#include "fixtures.h"
#include "synthetic.h"
#include "t2sf/common/rng.h"
#include "t2sf/common/strings.h"
#include "t2sf/retrieval/few_shot.h"
#include "t2sf/retrieval/infonce.h"
#include "t2sf/retrieval/knowledge_base.h"
#include "t2sf/retrieval/trainer.h"

namespace t2sf::retrieval {
namespace {

using sql::MaskedText;

double norm(const Vector& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

TEST(Embed, DeterministicAndUnitNorm) {
  const auto m = RetrieverModel::untrained();
  const MaskedText t{"SELECT <mask> FROM <mask> WHERE <mask> > <mask>"};
  EXPECT_EQ(m.embed(t), m.embed(t));
  EXPECT_NEAR(norm(m.embed(t)), 1.0, 1e-9);
  EXPECT_NEAR(norm(m.embed(t, EmbedRole::kQuery)), 1.0, 1e-9);
  const auto zero = m.embed(MaskedText{"   "});
  EXPECT_DOUBLE_EQ(zero[0], 1.0);
  EXPECT_NEAR(norm(zero), 1.0, 1e-12);
}

TEST(Embed, DisjointTokensNearOrthogonal) {
  // Hand check: the two texts share no unigram or bigram, so with the
  // fold-identity projection overlap can only come from bucket collisions.
  const auto m = RetrieverModel::untrained();
  const auto a = m.embed(MaskedText{"alpha beta gamma"});
  const auto b = m.embed(MaskedText{"delta epsilon zeta"});
  EXPECT_NEAR(cosine_sim(a, b), 0.0, 0.2);
  EXPECT_LT(cosine_sim(a, b), cosine_sim(a, m.embed(MaskedText{"alpha beta delta"})));
}

TEST(Embed, FeatureTokens) {
  EXPECT_EQ(feature_tokens("SELECT COUNT(*) FROM <mask> WHERE <mask> >= <mask>", "<mask>"),
            (std::vector<std::string>{"select", "count", "(", "*", ")", "from", "<mask>", "where",
                                      "<mask>", ">=", "<mask>"}));
  const auto x = featurize("a b a b", 1 << 20);
  double total = 0;
  for (const auto& [f, c] : x.entries) total += c;
  EXPECT_DOUBLE_EQ(total, 4 + 3);  // 4 unigrams + 3 bigrams
}

TEST(Embed, QueryRoleUsesPrefix) {
  const auto m = RetrieverModel::untrained();
  const MaskedText t{"how many <mask>"};
  EXPECT_NE(m.embed(t, EmbedRole::kQuery), m.embed(t, EmbedRole::kDocument));
  const auto bare = RetrieverModel::untrained(kDefaultFeatureCount, kDefaultDim, "");
  EXPECT_EQ(bare.embed(t, EmbedRole::kQuery), bare.embed(t, EmbedRole::kDocument));
}

TEST(Cosine, Basics) {
  const Vector v{0.6, 0.8};
  EXPECT_NEAR(cosine_sim(v, v), 1.0, 1e-12);
  EXPECT_NEAR(cosine_sim(v, {-0.8, 0.6}), 0.0, 1e-12);
  EXPECT_NEAR(cosine_sim(v, {-0.6, -0.8}), -1.0, 1e-12);
  EXPECT_DOUBLE_EQ(cosine_sim(v, {1, 0}), cosine_sim({1, 0}, v));
  EXPECT_THROW(cosine_sim(v, {1, 0, 0}), std::invalid_argument);
}

TEST(InfoNce, ScalarValues) {
  EXPECT_DOUBLE_EQ(infonce_loss(0.3, {}, 0.05), 0.0);
  EXPECT_NEAR(infonce_loss(1.0, {0.0, 0.0}, 1.0), -std::log(std::exp(1.0) / (std::exp(1.0) + 2)), 1e-12);
  EXPECT_NEAR(infonce_loss(1.0, {0.0, 0.0}, 1.0), 0.5514, 1e-4);
  EXPECT_NEAR(infonce_loss(0.0, {0.0}, 1.0), std::log(2.0), 1e-12);
  EXPECT_THROW(infonce_loss(0.0, {0.0}, 0.0), std::invalid_argument);
  EXPECT_THROW(infonce_loss(0.0, {0.0}, -1.0), std::invalid_argument);
  // Large logits stay finite.
  EXPECT_TRUE(std::isfinite(infonce_loss(1.0, {-1.0, 0.99}, 1e-4)));
  EXPECT_GE(infonce_loss(-1.0, {1.0}, 0.01), 0.0);
}

TEST(InfoNce, TemperatureKeepsOrdering) {
  // Lower loss for the higher positive similarity at any temperature.
  for (double tau : {0.01, 0.05, 0.5, 2.0}) {
    EXPECT_LT(infonce_loss(0.9, {0.1, 0.2}, tau), infonce_loss(0.5, {0.1, 0.2}, tau)) << tau;
  }
}

SparseVector random_features(Rng& rng, std::size_t f) {
  std::map<std::uint32_t, double> m;
  const std::size_t n = 1 + rng.uniform_index(4);
  for (std::size_t i = 0; i < n; ++i) {
    m[static_cast<std::uint32_t>(rng.uniform_index(f))] += 1.0 + static_cast<double>(rng.uniform_index(2));
  }
  return SparseVector{{m.begin(), m.end()}};
}

TEST(InfoNce, GradientMatchesFiniteDifferences) {
  Rng rng(2024);
  constexpr std::size_t kF = 8, kDim = 4;
  constexpr double kH = 1e-5;
  double worst = 0;
  for (int instance = 0; instance < 50; ++instance) {
    std::vector<double> p(kF * kDim);
    for (double& w : p) w = rng.uniform01() * 2 - 1;
    const RetrieverModel model(kF, kDim, "", p);
    std::vector<ContrastiveSample> batch(2);
    for (auto& s : batch) {
      s.query = random_features(rng, kF);
      s.positive = random_features(rng, kF);
      for (int j = 0; j < 3; ++j) s.negatives.push_back(random_features(rng, kF));
    }
    const double tau = 0.1 + rng.uniform01();
    const auto analytic = infonce_grad(model, batch, tau).to_dense(kF, kDim);
    std::vector<double> numeric(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      auto plus = p, minus = p;
      plus[i] += kH;
      minus[i] -= kH;
      numeric[i] = (infonce_batch_loss(RetrieverModel(kF, kDim, "", plus), batch, tau) -
                    infonce_batch_loss(RetrieverModel(kF, kDim, "", minus), batch, tau)) /
                   (2 * kH);
    }
    double diff = 0, scale = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      diff = std::max(diff, std::abs(analytic[i] - numeric[i]));
      scale = std::max({scale, std::abs(analytic[i]), std::abs(numeric[i])});
    }
    worst = std::max(worst, diff / scale);
  }
  EXPECT_LT(worst, 1e-4);
}

TEST(InfoNce, DescentStepRaisesPositiveMargin) {
  // Positive and negative start equally similar; one small step must separate them.
  std::vector<double> p(4 * 2, 0.0);
  p[0 * 2 + 0] = 1;  // query feature 0
  p[1 * 2 + 0] = 1;  // positive feature 1
  p[2 * 2 + 0] = 1;  // negative feature 2
  p[1 * 2 + 1] = 0.5;
  p[2 * 2 + 1] = -0.5;
  RetrieverModel m(4, 2, "", p);
  std::vector<ContrastiveSample> batch = {{{{{0, 1.0}}}, {{{1, 1.0}}}, {{{{2, 1.0}}}}}};
  auto sims = [&](const RetrieverModel& model) {
    const auto q = model.embed_features(batch[0].query);
    return cosine_sim(q, model.embed_features(batch[0].positive)) -
           cosine_sim(q, model.embed_features(batch[0].negatives[0]));
  };
  EXPECT_NEAR(sims(m), 0.0, 1e-12);
  double before = 0;
  const auto g = infonce_grad(m, batch, 0.5, &before).to_dense(4, 2);
  for (std::size_t i = 0; i < p.size(); ++i) m.mutable_projection()[i] -= 0.01 * g[i];
  EXPECT_GT(sims(m), 0.0);
  EXPECT_LT(infonce_batch_loss(m, batch, 0.5), before);
}

std::vector<TrainingPair> pairs(std::size_t n, std::uint64_t seed) {
  std::vector<TrainingPair> out;
  for (const auto& p : t2sf::testing::synthetic_pairs(n, seed)) out.push_back({p.question, p.sql});
  return out;
}

TEST(Train, DeterministicAndValidated) {
  const auto data = pairs(60, 3);
  TrainingConfig c;
  c.epochs = 2;
  const auto base = RetrieverModel::untrained(512, 32);
  const auto a = train_retriever(data, c, base);
  const auto b = train_retriever(data, c, base);
  EXPECT_EQ(a.model.projection(), b.model.projection());
  EXPECT_EQ(a.model.version(), b.model.version());
  EXPECT_NE(a.model.version(), base.version());
  EXPECT_FALSE(a.report.halted);
  EXPECT_EQ(a.report.epochs_completed, 2);
  for (std::size_t i = 1; i < a.report.validation_loss.size(); ++i) {
    EXPECT_LE(a.report.validation_loss[i], a.report.validation_loss[i - 1]);
  }
  c.rng_seed = 99;
  EXPECT_NE(train_retriever(data, c, base).model.projection(), a.model.projection());
}

TEST(Train, TooSmallOrInvalid) {
  TrainingConfig c;
  const auto base = RetrieverModel::untrained(64, 8);
  EXPECT_THROW(train_retriever({{"How many?", "SELECT count(*) FROM t"}}, c, base), DatasetTooSmallError);
  EXPECT_THROW(train_retriever({{"a", "not sql"}, {"b", "SELEC"}}, c, base), DatasetTooSmallError);
  c.temperature = 0;
  EXPECT_THROW(train_retriever(pairs(5, 1), c, base), std::invalid_argument);
}

TEST(Train, DivergenceHaltsWithDiagnostics) {
  TrainingConfig c;
  // Found by sweeping: this rate overshoots on the first epoch for this data.
  c.learning_rate = 5.0;
  c.batch_size = 16;
  c.epochs = 5;
  const auto base = RetrieverModel::untrained(512, 32);
  const auto r = train_retriever(pairs(80, 5), c, base);
  ASSERT_TRUE(r.report.halted);
  EXPECT_NE(r.report.diagnostics.find("validation loss rose"), std::string::npos);
  EXPECT_LT(r.report.epochs_completed, 5);
  // The kept weights reproduce the last accepted validation loss.
  EXPECT_EQ(r.report.validation_loss.size(), static_cast<std::size_t>(r.report.epochs_completed) + 1);
}

TEST(ModelFile, RoundTripAndErrors) {
  t2sf::testing::TempDir dir;
  TrainingConfig c;
  c.epochs = 1;
  const auto m = train_retriever(pairs(30, 4), c, RetrieverModel::untrained(256, 16)).model;
  const std::string path = dir.file("m.bin");
  m.save(path);
  const auto back = RetrieverModel::load(path);
  EXPECT_EQ(back, m);
  EXPECT_EQ(back.version(), m.version());
  const std::string header = read_file(path).substr(0, 40);
  EXPECT_EQ(header.rfind("T2SF-RETRIEVER 1 256 16 ", 0), 0u);
  // Byte-identical on re-save.
  const std::string again = dir.file("m2.bin");
  back.save(again);
  EXPECT_EQ(read_file(path), read_file(again));

  write_file(dir.file("bad.bin"), "garbage\n");
  EXPECT_THROW(RetrieverModel::load(dir.file("bad.bin")), ModelFormatError);
  std::string truncated = read_file(path);
  truncated.resize(truncated.size() - 3);
  write_file(dir.file("short.bin"), truncated);
  EXPECT_THROW(RetrieverModel::load(dir.file("short.bin")), ModelFormatError);
}

pipeline::AugmentedRecord record(const std::string& q, const std::string& s, int i) {
  pipeline::AugmentedRecord r;
  r.q = q;
  r.s_aug = s;
  r.provenance.seed_id = "seed-" + std::to_string(i);
  r.provenance.db_id = "synthetic";
  return r;
}

TEST(KnowledgeBase, BuildSaveLoad) {
  t2sf::testing::TempDir dir;
  const auto model = RetrieverModel::untrained(1024, 32);
  std::vector<pipeline::AugmentedRecord> records;
  for (const auto& p : t2sf::testing::synthetic_pairs(10, 8)) {
    records.push_back(record(p.question, p.sql, static_cast<int>(records.size())));
  }
  KbBuildReport report;
  const auto kb = build_kb(records, model, &report);
  ASSERT_EQ(kb.entries.size(), 10u);
  EXPECT_EQ(report.added, 10u);
  for (const auto& e : kb.entries) {
    EXPECT_NEAR(norm(e.e_q), 1.0, 1e-9);
    EXPECT_NEAR(norm(e.e_s), 1.0, 1e-9);
  }
  EXPECT_EQ(kb.entries[3].source["seed_id"], "seed-3");

  records.insert(records.begin() + 2, record("broken", "SELEC nothing", 99));
  const auto kb2 = build_kb(records, model, &report);
  EXPECT_EQ(kb2.entries.size(), 10u);
  ASSERT_EQ(report.skipped.size(), 1u);
  EXPECT_EQ(report.skipped[0].first, 2u);

  kb.save(dir.file("a.jsonl"));
  build_kb(std::vector<pipeline::AugmentedRecord>(records.begin(), records.begin() + 2), model)
      .save(dir.file("junk.jsonl"));
  const auto again = build_kb(
      std::vector<pipeline::AugmentedRecord>(records.begin(), records.begin() + 2), model);
  again.save(dir.file("junk2.jsonl"));
  EXPECT_EQ(read_file(dir.file("junk.jsonl")), read_file(dir.file("junk2.jsonl")));

  const auto loaded = KnowledgeBase::load(dir.file("a.jsonl"));
  EXPECT_EQ(loaded.model_version, model.version());
  ASSERT_EQ(loaded.entries.size(), kb.entries.size());
  for (std::size_t i = 0; i < kb.entries.size(); ++i) {
    EXPECT_EQ(loaded.entries[i].e_s, kb.entries[i].e_s);
    EXPECT_EQ(loaded.entries[i].masked_q, kb.entries[i].masked_q);
  }
}

TEST(Retrieve, RankingContract) {
  const auto model = RetrieverModel::untrained(2048, 64);
  std::vector<TrainingPair> data;
  for (const auto& p : t2sf::testing::synthetic_pairs(30, 12)) data.push_back({p.question, p.sql});
  data.push_back(data[4]);  // duplicate entry
  const auto kb = build_kb(data, model);
  const auto schema = t2sf::testing::synthetic_schema();
  const auto all = retrieve(kb, model, data[0].question, schema, kb.entries.size());
  ASSERT_EQ(all.size(), kb.entries.size());
  for (std::size_t i = 1; i < all.size(); ++i) {
    EXPECT_TRUE(all[i - 1].similarity > all[i].similarity ||
                (all[i - 1].similarity == all[i].similarity && all[i - 1].id < all[i].id));
  }
  const auto dup = upper_limit_retrieve(kb, model, data[4].sql, 2);
  ASSERT_EQ(dup.size(), 2u);
  EXPECT_EQ(kb.entries[dup[0].index].masked_s, kb.entries[dup[1].index].masked_s);
  EXPECT_LT(dup[0].id, dup[1].id);
  EXPECT_EQ(retrieve(kb, model, data[0].question, schema, 5).size(), 5u);
  EXPECT_EQ(retrieve(kb, model, data[0].question, schema, 3)[0].id, all[0].id);
}

TEST(Retrieve, UpperLimit) {
  const auto model = RetrieverModel::untrained(2048, 64);
  // One pair per skeleton so every masked SQL is unique.
  Rng rng(5);
  std::vector<TrainingPair> data;
  for (int s = 0; s < t2sf::testing::synthetic_skeleton_count(); ++s) {
    const auto p = t2sf::testing::synthetic_pair(s, 0, s % t2sf::testing::synthetic_domain_count(), rng);
    data.push_back({p.question, p.sql});
  }
  const auto kb = build_kb(data, model);
  for (const auto& e : kb.entries) {
    const auto hits = upper_limit_retrieve(kb, model, e.s, 1);
    ASSERT_EQ(hits.size(), 1u);
    EXPECT_EQ(hits[0].id, e.id);
    EXPECT_NEAR(hits[0].similarity, 1.0, 1e-12);
  }
  // Same structure, other literals: still rank 1.
  const auto other = t2sf::testing::synthetic_pair(0, 0, 0, rng);
  EXPECT_EQ(upper_limit_retrieve(kb, model, other.sql, 1)[0].id, 0);
  EXPECT_TRUE(upper_limit_retrieve(kb, model, other.sql, 0).empty());
  EXPECT_THROW(upper_limit_retrieve(kb, model, "SELEC", 1), sql::ParseError);
}

TEST(Retrieve, VersionMismatch) {
  const auto a = RetrieverModel::untrained(256, 16);
  const auto b = RetrieverModel::untrained(256, 16, "another instruction");
  const auto kb = build_kb(pairs(5, 2), a);
  EXPECT_THROW(retrieve(kb, b, "How many?", {}, 1), VersionMismatchError);
  EXPECT_THROW(upper_limit_retrieve(kb, b, "SELECT 1", 1), VersionMismatchError);
}

TEST(FewShot, OrderingAndZeroShot) {
  KnowledgeBase kb;
  for (int i = 0; i < 5; ++i) {
    KnowledgeBaseEntry e;
    e.id = i;
    e.q = "question " + std::to_string(i);
    e.s = "SELECT " + std::to_string(i);
    kb.entries.push_back(e);
  }
  std::vector<const KnowledgeBaseEntry*> ranked;
  for (const auto& e : kb.entries) ranked.push_back(&e);  // entry 0 is the most similar
  const auto tmpl = FewShotTemplate::defaults();
  const auto prompt = assemble_few_shot_prompt(ranked, tmpl, "CREATE TABLE t (a);", "target?", 5);
  std::size_t last = 0;
  for (int i = 4; i >= 0; --i) {
    const auto pos = prompt.find("question " + std::to_string(i));
    ASSERT_NE(pos, std::string::npos);
    EXPECT_GT(pos, last);
    last = pos;
  }
  EXPECT_GT(prompt.find("CREATE TABLE t (a);"), last);
  EXPECT_GT(prompt.find("target?"), last);
  EXPECT_EQ(prompt, assemble_few_shot_prompt(ranked, tmpl, "CREATE TABLE t (a);", "target?", 5));

  const auto zero = assemble_few_shot_prompt(ranked, tmpl, "CREATE TABLE t (a);", "target?", 0);
  EXPECT_EQ(zero.find("question "), std::string::npos);
  EXPECT_EQ(zero.rfind(tmpl.instruction, 0), 0u);
  EXPECT_THROW(assemble_few_shot_prompt(ranked, tmpl, "x", "y", 6), InsufficientEntriesError);
}

}  // namespace
}  // namespace t2sf::retrieval
