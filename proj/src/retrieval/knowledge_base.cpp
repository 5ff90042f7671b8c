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

#include "t2sf/retrieval/knowledge_base.h"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>

#include "t2sf/common/strings.h"
#include "t2sf/sql/token.h"

namespace t2sf::retrieval {
namespace {

void check_version(const KnowledgeBase& kb, const RetrieverModel& model) {
  if (kb.model_version != model.version()) {
    throw VersionMismatchError(fmt::format("knowledge base built with model {} but model is {}",
                                           kb.model_version, model.version()));
  }
}

std::vector<RetrievalHit> rank(const KnowledgeBase& kb, const Vector& query, std::size_t k) {
  std::vector<RetrievalHit> hits;
  hits.reserve(kb.entries.size());
  for (std::size_t i = 0; i < kb.entries.size(); ++i) {
    hits.push_back({i, kb.entries[i].id, cosine_sim(query, kb.entries[i].e_s)});
  }
  k = std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(k), hits.end(),
                    [](const RetrievalHit& a, const RetrievalHit& b) {
                      if (a.similarity != b.similarity) return a.similarity > b.similarity;
                      return a.id < b.id;
                    });
  hits.resize(k);
  return hits;
}

KnowledgeBaseEntry make_entry(std::int64_t id, const std::string& q, const std::string& s,
                              nlohmann::json source, const RetrieverModel& model) {
  KnowledgeBaseEntry e;
  e.id = id;
  e.q = q;
  e.s = s;
  e.masked_s = sql::mask_sql(s);
  e.masked_q = mask_pair_question(q, s);
  e.e_q = model.embed(e.masked_q, EmbedRole::kQuery);
  e.e_s = model.embed(e.masked_s, EmbedRole::kDocument);
  e.source = std::move(source);
  return e;
}

template <typename Item, typename Fn>
KnowledgeBase build(const std::vector<Item>& items, const RetrieverModel& model,
                    KbBuildReport* report, Fn&& unpack) {
  KnowledgeBase kb;
  kb.model_version = model.version();
  KbBuildReport local;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto [q, s, source] = unpack(items[i]);
    try {
      kb.entries.push_back(make_entry(static_cast<std::int64_t>(i), q, s, source, model));
      ++local.added;
    } catch (const sql::ParseError& e) {
      local.skipped.emplace_back(i, e.what());
    }
  }
  if (report) *report = std::move(local);
  return kb;
}

}  // namespace

void KnowledgeBase::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write knowledge base: " + path);
  for (const auto& e : entries) {
    nlohmann::ordered_json j;
    j["id"] = e.id;
    j["model_version"] = model_version;
    j["q"] = e.q;
    j["s"] = e.s;
    j["mask_token"] = e.masked_s.mask_token;
    j["masked_q"] = e.masked_q.text;
    j["masked_s"] = e.masked_s.text;
    j["e_q"] = e.e_q;
    j["e_s"] = e.e_s;
    j["source"] = e.source;
    out << j.dump() << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

KnowledgeBase KnowledgeBase::load(const std::string& path) {
  KnowledgeBase kb;
  bool first = true;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const auto version = j.at("model_version").get<std::uint64_t>();
      if (first) {
        kb.model_version = version;
        first = false;
      } else if (version != kb.model_version) {
        throw VersionMismatchError("entries built with different models");
      }
      KnowledgeBaseEntry e;
      e.id = j.at("id").get<std::int64_t>();
      e.q = j.at("q").get<std::string>();
      e.s = j.at("s").get<std::string>();
      const auto token = j.at("mask_token").get<std::string>();
      e.masked_q = {j.at("masked_q").get<std::string>(), token};
      e.masked_s = {j.at("masked_s").get<std::string>(), token};
      e.e_q = j.at("e_q").get<Vector>();
      e.e_s = j.at("e_s").get<Vector>();
      e.source = j.value("source", nlohmann::json());
      kb.entries.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw Error(fmt::format("{}:{}: {}", path, line_no, ex.what()));
    }
  }
  return kb;
}

KnowledgeBase build_kb(const std::vector<pipeline::AugmentedRecord>& records,
                       const RetrieverModel& model, KbBuildReport* report) {
  return build(records, model, report, [](const pipeline::AugmentedRecord& r) {
    return std::tuple<std::string, std::string, nlohmann::json>(r.q, r.s_aug,
                                                                pipeline::to_json(r)["provenance"]);
  });
}

KnowledgeBase build_kb(const std::vector<TrainingPair>& pairs, const RetrieverModel& model,
                       KbBuildReport* report) {
  return build(pairs, model, report, [](const TrainingPair& p) {
    return std::tuple<std::string, std::string, nlohmann::json>(p.question, p.sql, nullptr);
  });
}

std::vector<RetrievalHit> rank_masked_query(const KnowledgeBase& kb, const RetrieverModel& model,
                                            const sql::MaskedText& masked_query, std::size_t k) {
  check_version(kb, model);
  return rank(kb, model.embed(masked_query, EmbedRole::kQuery), k);
}

std::vector<RetrievalHit> retrieve(const KnowledgeBase& kb, const RetrieverModel& model,
                                   const std::string& q_target, const db::SchemaMetadata& schema,
                                   std::size_t k) {
  return rank_masked_query(kb, model, sql::mask_question(q_target, schema), k);
}

std::vector<RetrievalHit> upper_limit_retrieve(const KnowledgeBase& kb, const RetrieverModel& model,
                                               const std::string& gold_sql, std::size_t k) {
  check_version(kb, model);
  const auto masked = sql::mask_sql(gold_sql);
  if (k == 0) return {};
  return rank(kb, model.embed(masked, EmbedRole::kDocument), k);
}

}  // namespace t2sf::retrieval
