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

#include "t2sf/sql/corpus_stats.h"

#include <fmt/format.h>

#include "t2sf/common/strings.h"
#include "t2sf/sql/features.h"
#include "t2sf/sql/parser.h"

namespace t2sf::sql {
namespace {

void finalize(CorpusStats& s) {
  if (s.size == 0) {
    s.pct_window = s.pct_set_op = s.pct_subquery = s.pct_aggregation = 0;
    s.avg_case = s.avg_where = s.avg_join = 0;
    return;
  }
  const double n = static_cast<double>(s.size);
  s.pct_window = 100.0 * static_cast<double>(s.n_window) / n;
  s.pct_set_op = 100.0 * static_cast<double>(s.n_set_op) / n;
  s.pct_subquery = 100.0 * static_cast<double>(s.n_subquery) / n;
  s.pct_aggregation = 100.0 * static_cast<double>(s.n_aggregation) / n;
  s.avg_case = static_cast<double>(s.total_case) / n;
  s.avg_where = static_cast<double>(s.total_where) / n;
  s.avg_join = static_cast<double>(s.total_join) / n;
}

}  // namespace

CorpusStats corpus_stats(const std::vector<std::string>& corpus) {
  CorpusStats s;
  for (const auto& sql : corpus) {
    if (trim(sql).empty()) continue;
    SqlFeatureVector f;
    try {
      f = extract_features(sql);
    } catch (const ParseError&) {
      ++s.parse_failures;
      continue;
    }
    ++s.size;
    s.n_window += f.has_window;
    s.n_set_op += f.has_set_op;
    s.n_subquery += f.has_subquery;
    s.n_aggregation += f.has_aggregation;
    s.total_case += static_cast<std::size_t>(f.case_count);
    s.total_where += static_cast<std::size_t>(f.where_count);
    s.total_join += static_cast<std::size_t>(f.join_count);
  }
  finalize(s);
  return s;
}

CorpusStats combine(const CorpusStats& a, const CorpusStats& b) {
  CorpusStats s;
  s.size = a.size + b.size;
  s.parse_failures = a.parse_failures + b.parse_failures;
  s.n_window = a.n_window + b.n_window;
  s.n_set_op = a.n_set_op + b.n_set_op;
  s.n_subquery = a.n_subquery + b.n_subquery;
  s.n_aggregation = a.n_aggregation + b.n_aggregation;
  s.total_case = a.total_case + b.total_case;
  s.total_where = a.total_where + b.total_where;
  s.total_join = a.total_join + b.total_join;
  finalize(s);
  return s;
}

nlohmann::ordered_json to_json(const std::string& dataset, const CorpusStats& s) {
  nlohmann::ordered_json j;
  j["dataset"] = dataset;
  j["size"] = s.size;
  j["window_pct"] = s.pct_window;
  j["set_op_pct"] = s.pct_set_op;
  j["subquery_pct"] = s.pct_subquery;
  j["aggregation_pct"] = s.pct_aggregation;
  j["case_avg"] = s.avg_case;
  j["where_avg"] = s.avg_where;
  j["join_avg"] = s.avg_join;
  j["parse_failures"] = s.parse_failures;
  return j;
}

std::string format_stats_table(const std::vector<std::pair<std::string, CorpusStats>>& rows) {
  std::size_t name_width = 7;
  for (const auto& [name, _] : rows) name_width = std::max(name_width, name.size());
  std::string out = fmt::format("{:<{}} {:>8} {:>8} {:>8} {:>9} {:>11} {:>7} {:>7} {:>7} {:>9}\n",
                                "Dataset", name_width, "Size", "Window%", "SetOp%", "Subquery%",
                                "Aggregate%", "#CASE", "#WHERE", "#Join", "Failures");
  for (const auto& [name, s] : rows) {
    out += fmt::format(
        "{:<{}} {:>8} {:>8.2f} {:>8.2f} {:>9.2f} {:>11.2f} {:>7.2f} {:>7.2f} {:>7.2f} {:>9}\n",
        name, name_width, s.size, s.pct_window, s.pct_set_op, s.pct_subquery, s.pct_aggregation,
        s.avg_case, s.avg_where, s.avg_join, s.parse_failures);
  }
  return out;
}

}  // namespace t2sf::sql
