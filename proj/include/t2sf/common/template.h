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

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "t2sf/common/error.h"

namespace t2sf {

class MissingSlotError : public Error {
 public:
  using Error::Error;
};

// Replaces {name} slots. Every slot in the template must be bound, and bound
// to non-empty text unless listed in `may_be_empty`. "{{" and "}}" escape braces.
std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& slots,
                            const std::set<std::string>& may_be_empty = {});

}  // namespace t2sf
