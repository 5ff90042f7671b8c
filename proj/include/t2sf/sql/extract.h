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

#include <optional>
#include <string>
#include <string_view>

namespace t2sf::sql {

// Pulls the final SQL out of model output: the last ```sql fenced block if
// any, otherwise the last statement starting a line with SELECT or WITH
// (running to the next semicolon or blank line). Trailing semicolons are
// dropped.
std::optional<std::string> extract_sql_from_text(std::string_view text);

}  // namespace t2sf::sql
