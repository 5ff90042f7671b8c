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

#include "t2sf/pipeline/record.h"

namespace t2sf::testing {

// Checks a record against the database file directly through SQLite:
// s_aug runs, the CoT's final query returns the same rows (ordered only when
// s_aug has a top-level ORDER BY), cd matches the classifier, ed is a
// multiple of 1/ed_k in [0, 1], and the prompt carries the question.
// Returns the problems found.
std::vector<std::string> revalidate_record(const pipeline::AugmentedRecord& r,
                                           const std::string& db_path, int ed_k);

}  // namespace t2sf::testing
