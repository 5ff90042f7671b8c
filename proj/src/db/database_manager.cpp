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

#include "t2sf/db/database_manager.h"

#include <algorithm>
#include <filesystem>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "t2sf/common/rng.h"
#include "t2sf/sql/token.h"

namespace t2sf::db {

bool has_top_level_order_by(std::string_view sql) {
  std::vector<sql::Token> tokens;
  try {
    tokens = sql::tokenize(sql, "");
  } catch (const sql::ParseError&) {
    return false;
  }
  int depth = 0;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    const auto& t = tokens[i];
    if (t.is_punct('(')) ++depth;
    if (t.is_punct(')')) --depth;
    if (depth == 0 && t.is_keyword("ORDER") && tokens[i + 1].is_keyword("BY")) return true;
  }
  return false;
}

DatabaseManager::~DatabaseManager() {
  std::unique_lock lock(handles_mutex_);
  for (auto& [_, conn] : handles_) {
    for (auto& slot : conn->slots) {
      std::lock_guard slot_lock(slot->mutex);
      if (slot->connector) slot->connector->close();
    }
  }
}

ConnectionHandle DatabaseManager::connect_db(const ConnectorConfig& config) {
  config.validate();
  auto conn = std::make_shared<Connection>();
  conn->config = config;
  auto primary = make_connector(config.backend);
  primary->connect(config);
  conn->shareable = primary->shareable();
  conn->slots.push_back(std::make_unique<Slot>());
  conn->slots[0]->connector = std::move(primary);
  const std::size_t pool = conn->shareable ? static_cast<std::size_t>(config.max_connections) : 1;
  while (conn->slots.size() < pool) conn->slots.push_back(std::make_unique<Slot>());

  std::unique_lock lock(handles_mutex_);
  const std::uint64_t id = next_id_++;
  if (conn->shareable) {
    std::error_code ec;
    auto canonical = std::filesystem::weakly_canonical(config.location, ec);
    conn->cache_key = config.backend + "|" + (ec ? config.location : canonical.string());
  } else {
    // Every in-memory connection is its own database.
    conn->cache_key = fmt::format("{}|{}#{}", config.backend, config.location, id);
  }
  handles_.emplace(id, std::move(conn));
  return ConnectionHandle{id};
}

void DatabaseManager::close(ConnectionHandle handle) {
  std::shared_ptr<Connection> conn;
  {
    std::unique_lock lock(handles_mutex_);
    auto it = handles_.find(handle.id);
    if (it == handles_.end()) return;
    conn = std::move(it->second);
    handles_.erase(it);
  }
  for (auto& slot : conn->slots) {
    std::lock_guard slot_lock(slot->mutex);
    if (slot->connector) slot->connector->close();
  }
}

std::shared_ptr<DatabaseManager::Connection> DatabaseManager::lookup(ConnectionHandle handle) const {
  std::shared_lock lock(handles_mutex_);
  auto it = handles_.find(handle.id);
  if (it == handles_.end()) {
    throw ConnectionError(fmt::format("unknown connection handle {}", handle.id));
  }
  return it->second;
}

const ConnectorConfig& DatabaseManager::config(ConnectionHandle handle) const {
  return lookup(handle)->config;
}

Millis DatabaseManager::resolve_timeout(const Connection& conn, std::optional<Millis> timeout) const {
  const Millis t = timeout.value_or(conn.config.default_timeout);
  if (t.count() <= 0) throw std::invalid_argument("timeout must be positive");
  return t;
}

ExecOutcome DatabaseManager::run_on_slot(Connection& conn, std::size_t slot_index,
                                         std::string_view sql, Millis timeout) {
  Slot& slot = *conn.slots[slot_index];
  std::lock_guard lock(slot.mutex);
  if (!slot.connector) {
    try {
      auto c = make_connector(conn.config.backend);
      c->connect(conn.config);
      slot.connector = std::move(c);
    } catch (const std::exception& e) {
      return ExecutionError{ExecutionError::Kind::kConnection, e.what()};
    }
  }
  ++statements_;
  return slot.connector->execute(sql, timeout);
}

ExecOutcome DatabaseManager::execute_sql(ConnectionHandle handle, std::string_view sql,
                                         std::optional<Millis> timeout) {
  auto conn = lookup(handle);
  return run_on_slot(*conn, 0, sql, resolve_timeout(*conn, timeout));
}

std::vector<ExecOutcome> DatabaseManager::batch_sql_execution(ConnectionHandle handle,
                                                              const std::vector<std::string>& sqls,
                                                              std::optional<Millis> timeout,
                                                              int parallelism) {
  auto conn = lookup(handle);
  if (parallelism < 1 || parallelism > conn->config.max_connections) {
    throw std::invalid_argument(fmt::format("parallelism must be in [1, {}]",
                                            conn->config.max_connections));
  }
  const Millis t = resolve_timeout(*conn, timeout);
  std::vector<ExecOutcome> results(sqls.size());
  const std::size_t workers =
      std::min<std::size_t>({static_cast<std::size_t>(parallelism), conn->slots.size(),
                             std::max<std::size_t>(sqls.size(), 1)});
  if (workers <= 1) {
    for (std::size_t i = 0; i < sqls.size(); ++i) results[i] = run_on_slot(*conn, 0, sqls[i], t);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (std::size_t i = next++; i < sqls.size(); i = next++) {
        results[i] = run_on_slot(*conn, w, sqls[i], t);
      }
    });
  }
  for (auto& th : threads) th.join();
  return results;
}

std::vector<ComparisonOutcome> DatabaseManager::batch_compare_sql(
    ConnectionHandle handle, const std::vector<std::pair<std::string, std::string>>& pairs,
    std::optional<Millis> timeout, int parallelism) {
  std::vector<std::string> flat;
  flat.reserve(pairs.size() * 2);
  for (const auto& [a, b] : pairs) {
    flat.push_back(a);
    flat.push_back(b);
  }
  const auto results = batch_sql_execution(handle, flat, timeout, parallelism);
  std::vector<ComparisonOutcome> out;
  out.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto mode = has_top_level_order_by(pairs[i].first) ? ComparisonOutcome::Mode::kOrdered
                                                             : ComparisonOutcome::Mode::kMultiset;
    const auto& left = results[2 * i];
    const auto& right = results[2 * i + 1];
    if (const auto* err = std::get_if<ExecutionError>(&left)) {
      out.push_back({false, mode, "first query failed (" + to_string(err->kind) + "): " + err->message});
      continue;
    }
    if (const auto* err = std::get_if<ExecutionError>(&right)) {
      out.push_back({false, mode, "second query failed (" + to_string(err->kind) + "): " + err->message});
      continue;
    }
    out.push_back(compare_results(std::get<ExecutionResult>(left), std::get<ExecutionResult>(right), mode));
  }
  return out;
}

SchemaMetadata DatabaseManager::get_schema(ConnectionHandle handle) {
  auto conn = lookup(handle);
  {
    std::shared_lock lock(cache_mutex_);
    auto it = schema_cache_.find(conn->cache_key);
    if (it != schema_cache_.end()) {
      ++cache_hits_;
      return nlohmann::json::parse(it->second).get<SchemaMetadata>();
    }
  }
  ++cache_misses_;
  SchemaMetadata schema;
  {
    Slot& slot = *conn->slots[0];
    std::lock_guard lock(slot.mutex);
    const auto before = slot.connector->catalog_query_count();
    schema = slot.connector->get_schema();
    catalog_queries_ += slot.connector->catalog_query_count() - before;
  }
  std::unique_lock lock(cache_mutex_);
  schema_cache_[conn->cache_key] = nlohmann::json(schema).dump();
  return schema;
}

void DatabaseManager::invalidate_schema_cache(ConnectionHandle handle) {
  std::shared_ptr<Connection> conn;
  {
    std::shared_lock lock(handles_mutex_);
    auto it = handles_.find(handle.id);
    if (it == handles_.end()) return;
    conn = it->second;
  }
  std::unique_lock lock(cache_mutex_);
  schema_cache_.erase(conn->cache_key);
}

std::string DatabaseManager::get_ddl(ConnectionHandle handle) {
  return render_ddl(get_schema(handle));
}

std::vector<std::string> DatabaseManager::get_insert_statement(ConnectionHandle handle,
                                                               const std::string& table,
                                                               std::size_t n) {
  const SchemaMetadata schema = get_schema(handle);
  const TableMeta* meta = schema.find_table(table);
  if (!meta) throw UnknownTableError("unknown table: " + table);
  std::string cols;
  for (const auto& c : meta->columns) {
    if (!cols.empty()) cols += ", ";
    cols += quote_identifier(c.name);
  }
  auto outcome = execute_sql(
      handle, fmt::format("SELECT {} FROM {} LIMIT {}", cols, quote_identifier(meta->name), n));
  if (auto* err = std::get_if<ExecutionError>(&outcome)) {
    throw Error("reading rows of " + table + " failed: " + err->message);
  }
  std::vector<std::string> out;
  for (const auto& row : std::get<ExecutionResult>(outcome).rows) {
    std::string values;
    for (const auto& v : row) {
      if (!values.empty()) values += ", ";
      values += to_sql_literal(v);
    }
    out.push_back(fmt::format("INSERT INTO {} ({}) VALUES ({});", quote_identifier(meta->name),
                              cols, values));
  }
  return out;
}

std::vector<SampledValue> DatabaseManager::sample_values(ConnectionHandle handle, std::size_t n,
                                                         std::uint64_t rng_seed) {
  // Per-column cap on distinct values considered.
  constexpr std::size_t kPerColumn = 200;
  const SchemaMetadata schema = get_schema(handle);
  std::vector<SampledValue> pool;
  for (const auto& table : schema.tables) {
    for (const auto& col : table.columns) {
      const std::string q = quote_identifier(col.name);
      auto outcome = execute_sql(
          handle, fmt::format("SELECT DISTINCT {0} FROM {1} WHERE {0} IS NOT NULL ORDER BY {0} LIMIT {2}",
                              q, quote_identifier(table.name), kPerColumn));
      if (!succeeded(outcome)) continue;
      for (auto& row : std::get<ExecutionResult>(outcome).rows) {
        if (std::holds_alternative<Blob>(row[0])) continue;
        pool.push_back({table.name, col.name, std::move(row[0])});
      }
    }
  }
  if (pool.empty()) throw EmptyDatabaseError("database has no non-empty table to sample from");
  Rng rng(rng_seed);
  rng.shuffle(pool);
  if (pool.size() > n) pool.resize(n);
  return pool;
}

ManagerStats DatabaseManager::stats() const {
  return ManagerStats{catalog_queries_.load(), cache_hits_.load(), cache_misses_.load(),
                      statements_.load()};
}

}  // namespace t2sf::db
