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

#include "t2sf/retrieval/few_shot.h"

#include <fmt/format.h>

#include "t2sf/common/template.h"

namespace t2sf::retrieval {

FewShotTemplate FewShotTemplate::defaults() {
  return {
      "/* Write one SQLite query that answers the last question. The solved examples "
      "below have a similar structure. */",
      "/* Question: {question} */\n{sql};",
      "/* Database schema: */\n{schema}\n\n/* Question: {question} */\nSELECT",
  };
}

std::string assemble_few_shot_prompt(const std::vector<const KnowledgeBaseEntry*>& ranked,
                                     const FewShotTemplate& tmpl, const std::string& schema_ddl,
                                     const std::string& q_target, std::size_t shots) {
  if (ranked.size() < shots) {
    throw InsufficientEntriesError(
        fmt::format("{} shots requested but only {} entries given", shots, ranked.size()));
  }
  std::string out = tmpl.instruction;
  for (std::size_t i = shots; i-- > 0;) {
    out += "\n\n";
    out += render_template(tmpl.example, {{"question", ranked[i]->q}, {"sql", ranked[i]->s}});
  }
  out += "\n\n";
  out += render_template(tmpl.target, {{"schema", schema_ddl}, {"question", q_target}});
  return out;
}

}  // namespace t2sf::retrieval
