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

#include "revalidate.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "fixtures.h"
#include "t2sf/sql/hardness.h"

namespace t2sf::testing {

namespace {

// Last fenced ```sql block, written independently of the library's extractor.
std::optional<std::string> last_sql_block(const std::string& text) {
  const std::string open = "```sql";
  const auto start = text.rfind(open);
  if (start == std::string::npos) return std::nullopt;
  const auto body = text.find('\n', start);
  const auto close = text.find("```", body == std::string::npos ? start + open.size() : body);
  if (body == std::string::npos || close == std::string::npos) return std::nullopt;
  return text.substr(body + 1, close - body - 1);
}

bool top_level_order_by(const std::string& sql) {
  int depth = 0;
  std::string upper;
  for (char c : sql) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  for (std::size_t i = 0; i < upper.size(); ++i) {
    if (upper[i] == '(') ++depth;
    if (upper[i] == ')') --depth;
    if (depth == 0 && upper.compare(i, 8, "ORDER BY") == 0) return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> revalidate_record(const pipeline::AugmentedRecord& r,
                                           const std::string& db_path, int ed_k) {
  std::vector<std::string> problems;
  auto gold = sqlite_rows(db_path, r.s_aug);
  if (!gold) problems.push_back("s_aug does not execute");
  const auto cot_sql = last_sql_block(r.cot);
  if (!cot_sql) {
    problems.push_back("CoT has no fenced SQL");
  } else if (gold) {
    auto got = sqlite_rows(db_path, *cot_sql);
    if (!got) {
      problems.push_back("CoT SQL does not execute");
    } else {
      if (!top_level_order_by(r.s_aug)) {
        std::sort(gold->begin(), gold->end());
        std::sort(got->begin(), got->end());
      }
      if (*gold != *got) problems.push_back("CoT SQL returns different rows");
    }
  }
  try {
    if (sql::classify_components(r.s_aug) != r.cd) problems.push_back("cd differs from the classifier");
  } catch (const std::exception& e) {
    problems.push_back(std::string("s_aug does not parse: ") + e.what());
  }
  const double scaled = r.ed * ed_k;
  if (r.ed < 0 || r.ed > 1 || std::abs(scaled - std::round(scaled)) > 1e-9) {
    problems.push_back("ed is not a multiple of 1/k in [0, 1]");
  }
  if (r.q.empty() || r.p.find(r.q) == std::string::npos) problems.push_back("prompt lacks the question");
  if (r.schema_ddl.empty() || r.p.find(r.schema_ddl) == std::string::npos) {
    problems.push_back("prompt lacks the schema");
  }
  return problems;
}

}  // namespace t2sf::testing
