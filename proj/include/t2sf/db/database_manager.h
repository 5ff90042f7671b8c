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

#include <atomic>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "t2sf/db/connector.h"

namespace t2sf::db {

struct ConnectionHandle {
  std::uint64_t id = 0;
  auto operator<=>(const ConnectionHandle&) const = default;
};

struct SampledValue {
  std::string table;
  std::string column;
  Value value;
};

struct ManagerStats {
  std::uint64_t catalog_queries = 0;
  std::uint64_t schema_cache_hits = 0;
  std::uint64_t schema_cache_misses = 0;
  std::uint64_t statements_executed = 0;
};

class UnknownTableError : public Error {
 public:
  using Error::Error;
};

class EmptyDatabaseError : public Error {
 public:
  using Error::Error;
};

// True when the statement's outermost query ends in ORDER BY (ORDER BY inside
// parentheses, e.g. subqueries or window specs, does not count).
bool has_top_level_order_by(std::string_view sql);

// Unified access layer over database connectors. Thread-safe: each underlying
// connection runs one statement at a time, batch calls fan out over a small
// per-handle pool, and schema metadata is cached per (backend, location).
class DatabaseManager {
 public:
  DatabaseManager() = default;
  ~DatabaseManager();
  DatabaseManager(const DatabaseManager&) = delete;
  DatabaseManager& operator=(const DatabaseManager&) = delete;

  // Throws ConfigError or ConnectionError.
  ConnectionHandle connect_db(const ConnectorConfig& config);
  void close(ConnectionHandle handle);
  const ConnectorConfig& config(ConnectionHandle handle) const;

  // Uses the handle's default timeout when `timeout` is empty.
  ExecOutcome execute_sql(ConnectionHandle handle, std::string_view sql,
                          std::optional<Millis> timeout = std::nullopt);

  // Results are in input order. Each item fails independently.
  // Requires 1 <= parallelism <= max_connections.
  std::vector<ExecOutcome> batch_sql_execution(ConnectionHandle handle,
                                               const std::vector<std::string>& sqls,
                                               std::optional<Millis> timeout = std::nullopt,
                                               int parallelism = 1);

  // Multiset comparison unless the first query has a top-level ORDER BY.
  // Execution errors give equal=false with the error in `detail`.
  std::vector<ComparisonOutcome> batch_compare_sql(
      ConnectionHandle handle, const std::vector<std::pair<std::string, std::string>>& pairs,
      std::optional<Millis> timeout = std::nullopt, int parallelism = 1);

  SchemaMetadata get_schema(ConnectionHandle handle);
  // Unknown handles are ignored.
  void invalidate_schema_cache(ConnectionHandle handle);

  std::string get_ddl(ConnectionHandle handle);
  // Up to `n` INSERT statements built from the first rows of `table`.
  std::vector<std::string> get_insert_statement(ConnectionHandle handle, const std::string& table,
                                                std::size_t n);
  // Up to `n` distinct (table, column, value) triples, reproducible per seed.
  std::vector<SampledValue> sample_values(ConnectionHandle handle, std::size_t n,
                                          std::uint64_t rng_seed);

  ManagerStats stats() const;

 private:
  struct Slot {
    std::mutex mutex;
    std::unique_ptr<DatabaseConnector> connector;
  };
  struct Connection {
    ConnectorConfig config;
    std::string cache_key;
    std::vector<std::unique_ptr<Slot>> slots;  // slots[0] serves execute_sql
    bool shareable = true;
  };

  std::shared_ptr<Connection> lookup(ConnectionHandle handle) const;
  ExecOutcome run_on_slot(Connection& conn, std::size_t slot, std::string_view sql, Millis timeout);
  Millis resolve_timeout(const Connection& conn, std::optional<Millis> timeout) const;

  mutable std::shared_mutex handles_mutex_;
  std::map<std::uint64_t, std::shared_ptr<Connection>> handles_;
  std::uint64_t next_id_ = 1;

  mutable std::shared_mutex cache_mutex_;
  std::map<std::string, std::string> schema_cache_;  // key -> serialized metadata

  std::atomic<std::uint64_t> catalog_queries_{0};
  std::atomic<std::uint64_t> cache_hits_{0};
  std::atomic<std::uint64_t> cache_misses_{0};
  std::atomic<std::uint64_t> statements_{0};
};

}  // namespace t2sf::db
