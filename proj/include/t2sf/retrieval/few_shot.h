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

#include <string>
#include <vector>

#include "t2sf/retrieval/knowledge_base.h"

namespace t2sf::retrieval {

struct FewShotTemplate {
  std::string instruction;
  std::string example;  // slots {question} {sql}
  std::string target;   // slots {schema} {question}

  static FewShotTemplate defaults();
};

class InsufficientEntriesError : public Error {
 public:
  using Error::Error;
};

// `ranked` is most-similar first, as returned by retrieve(). The first `shots`
// entries are written in ascending similarity so the closest sits next to the target.
std::string assemble_few_shot_prompt(const std::vector<const KnowledgeBaseEntry*>& ranked,
                                     const FewShotTemplate& tmpl, const std::string& schema_ddl,
                                     const std::string& q_target, std::size_t shots);

}  // namespace t2sf::retrieval
