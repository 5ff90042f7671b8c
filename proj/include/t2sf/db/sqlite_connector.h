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

#include <memory>

#include "t2sf/db/connector.h"

struct sqlite3;

namespace t2sf::db {

class SqliteConnector final : public DatabaseConnector {
 public:
  SqliteConnector() = default;
  ~SqliteConnector() override;
  SqliteConnector(const SqliteConnector&) = delete;
  SqliteConnector& operator=(const SqliteConnector&) = delete;

  void connect(const ConnectorConfig& config) override;
  ExecOutcome execute(std::string_view sql, Millis timeout) override;
  SchemaMetadata get_schema() override;
  void close() override;
  std::uint64_t catalog_query_count() const override { return catalog_queries_; }
  bool shareable() const override { return !in_memory_; }

 private:
  ExecOutcome run_catalog(const std::string& sql);

  sqlite3* db_ = nullptr;
  std::string location_;
  bool in_memory_ = false;
  std::uint64_t catalog_queries_ = 0;
};

}  // namespace t2sf::db
