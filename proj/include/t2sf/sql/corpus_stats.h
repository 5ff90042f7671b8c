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

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace t2sf::sql {

// Table-style complexity statistics of a query corpus. Percentages and
// averages are over the `size` queries that parsed; the rest are tallied in
// `parse_failures`.
struct CorpusStats {
  std::size_t size = 0;
  std::size_t parse_failures = 0;

  // Raw totals the figures below are derived from.
  std::size_t n_window = 0;
  std::size_t n_set_op = 0;
  std::size_t n_subquery = 0;
  std::size_t n_aggregation = 0;
  std::size_t total_case = 0;
  std::size_t total_where = 0;
  std::size_t total_join = 0;

  double pct_window = 0;
  double pct_set_op = 0;
  double pct_subquery = 0;
  double pct_aggregation = 0;
  double avg_case = 0;
  double avg_where = 0;
  double avg_join = 0;
};

CorpusStats corpus_stats(const std::vector<std::string>& corpus);

// Merges totals of two disjoint corpora and recomputes the figures.
CorpusStats combine(const CorpusStats& a, const CorpusStats& b);

nlohmann::ordered_json to_json(const std::string& dataset, const CorpusStats& s);

// Aligned plain-text table with one row per dataset.
std::string format_stats_table(const std::vector<std::pair<std::string, CorpusStats>>& rows);

}  // namespace t2sf::sql
