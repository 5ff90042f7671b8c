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

#include "t2sf/common/template.h"

namespace t2sf {

std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& slots,
                            const std::set<std::string>& may_be_empty) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    const char c = tmpl[i];
    if ((c == '{' || c == '}') && i + 1 < tmpl.size() && tmpl[i + 1] == c) {
      out.push_back(c);
      i += 2;
      continue;
    }
    if (c == '{') {
      const auto close = tmpl.find('}', i + 1);
      if (close == std::string_view::npos) throw MissingSlotError("unterminated slot in template");
      const std::string name(tmpl.substr(i + 1, close - i - 1));
      const auto it = slots.find(name);
      if (it == slots.end()) throw MissingSlotError("template slot {" + name + "} is not bound");
      if (it->second.empty() && !may_be_empty.count(name)) {
        throw MissingSlotError("template slot {" + name + "} is empty");
      }
      out += it->second;
      i = close + 1;
      continue;
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

}  // namespace t2sf
