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

#include "t2sf/llm/types.h"

namespace t2sf::llm {

// A text-generation service. Implementations throw TransportError,
// QuotaError or MalformedResponseError; they need not retry.
class LlmBackend {
 public:
  virtual ~LlmBackend() = default;
  virtual GenerationResponse generate(const GenerationRequest& request) = 0;
};

}  // namespace t2sf::llm
