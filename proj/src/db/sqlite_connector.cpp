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

#include "t2sf/db/sqlite_connector.h"

#include <sqlite3.h>

#include <algorithm>
#include <filesystem>
#include <map>

#include <fmt/format.h>

#include "t2sf/common/strings.h"

namespace t2sf::db {

namespace {

struct Deadline {
  std::chrono::steady_clock::time_point at;
  bool fired = false;
};

int progress_callback(void* arg) {
  auto* d = static_cast<Deadline*>(arg);
  if (std::chrono::steady_clock::now() >= d->at) {
    d->fired = true;
    return 1;
  }
  return 0;
}

bool looks_like_syntax_error(std::string_view msg) {
  return msg.find("syntax error") != std::string_view::npos ||
         msg.find("incomplete input") != std::string_view::npos ||
         msg.find("unrecognized token") != std::string_view::npos;
}

Value read_cell(sqlite3_stmt* stmt, int col) {
  switch (sqlite3_column_type(stmt, col)) {
    case SQLITE_INTEGER: return static_cast<std::int64_t>(sqlite3_column_int64(stmt, col));
    case SQLITE_FLOAT: return sqlite3_column_double(stmt, col);
    case SQLITE_TEXT: {
      const auto* p = reinterpret_cast<const char*>(sqlite3_column_text(stmt, col));
      return std::string(p, static_cast<std::size_t>(sqlite3_column_bytes(stmt, col)));
    }
    case SQLITE_BLOB: {
      const auto* p = static_cast<const std::uint8_t*>(sqlite3_column_blob(stmt, col));
      const auto n = static_cast<std::size_t>(sqlite3_column_bytes(stmt, col));
      return Blob{std::vector<std::uint8_t>(p, p + n)};
    }
    default: return std::monostate{};
  }
}

std::string text_at(const Row& row, std::size_t i) {
  if (i >= row.size()) return {};
  if (const auto* s = std::get_if<std::string>(&row[i])) return *s;
  if (std::holds_alternative<std::monostate>(row[i])) return {};
  return to_display(row[i]);
}

std::int64_t int_at(const Row& row, std::size_t i) {
  if (i < row.size()) {
    if (const auto* v = std::get_if<std::int64_t>(&row[i])) return *v;
  }
  return 0;
}

}  // namespace

SqliteConnector::~SqliteConnector() { close(); }

void SqliteConnector::connect(const ConnectorConfig& config) {
  close();
  location_ = config.location;
  in_memory_ = location_ == ":memory:" || location_.find("mode=memory") != std::string::npos;
  const bool is_uri = istarts_with(location_, "file:");
  if (!in_memory_ && !is_uri && !std::filesystem::exists(location_)) {
    throw ConnectionError("database file not found: " + location_);
  }
  const int flags = SQLITE_OPEN_READWRITE | SQLITE_OPEN_URI | SQLITE_OPEN_NOMUTEX;
  const int rc = sqlite3_open_v2(location_.c_str(), &db_, flags, nullptr);
  if (rc != SQLITE_OK) {
    std::string msg = db_ ? sqlite3_errmsg(db_) : sqlite3_errstr(rc);
    close();
    throw ConnectionError(fmt::format("cannot open {}: {}", location_, msg));
  }
  sqlite3_busy_timeout(db_, static_cast<int>(config.default_timeout.count()));
  // Touch the schema so that a non-database file fails here.
  auto probe = execute("SELECT count(*) FROM sqlite_master", config.default_timeout);
  if (auto* err = std::get_if<ExecutionError>(&probe)) {
    close();
    throw ConnectionError(fmt::format("cannot open {}: {}", config.location, err->message));
  }
}

void SqliteConnector::close() {
  if (db_) {
    sqlite3_close_v2(db_);
    db_ = nullptr;
  }
}

ExecOutcome SqliteConnector::execute(std::string_view sql, Millis timeout) {
  if (!db_) return ExecutionError{ExecutionError::Kind::kConnection, "connection is closed"};
  const auto started = std::chrono::steady_clock::now();
  Deadline deadline{started + timeout};
  sqlite3_progress_handler(db_, 1000, progress_callback, &deadline);
  struct ResetHandler {
    sqlite3* db;
    ~ResetHandler() { sqlite3_progress_handler(db, 0, nullptr, nullptr); }
  } reset{db_};

  auto timeout_error = [&] {
    return ExecutionError{ExecutionError::Kind::kTimeout,
                          fmt::format("query exceeded the timeout of {} ms", timeout.count())};
  };

  ExecutionResult result;
  std::string_view rest = sql;
  while (!trim(rest).empty()) {
    sqlite3_stmt* stmt = nullptr;
    const char* tail = nullptr;
    int rc = sqlite3_prepare_v2(db_, rest.data(), static_cast<int>(rest.size()), &stmt, &tail);
    if (rc != SQLITE_OK) {
      if (deadline.fired) return timeout_error();
      std::string msg = sqlite3_errmsg(db_);
      const auto kind = looks_like_syntax_error(msg) ? ExecutionError::Kind::kSyntax
                                                     : ExecutionError::Kind::kRuntime;
      return ExecutionError{kind, std::move(msg)};
    }
    rest = rest.substr(static_cast<std::size_t>(tail - rest.data()));
    if (!stmt) continue;  // comment or whitespace only
    std::unique_ptr<sqlite3_stmt, int (*)(sqlite3_stmt*)> guard(stmt, sqlite3_finalize);

    ExecutionResult current;
    const int ncols = sqlite3_column_count(stmt);
    for (int c = 0; c < ncols; ++c) {
      const char* name = sqlite3_column_name(stmt, c);
      current.columns.emplace_back(name ? name : "");
    }
    while ((rc = sqlite3_step(stmt)) == SQLITE_ROW) {
      Row row;
      row.reserve(static_cast<std::size_t>(ncols));
      for (int c = 0; c < ncols; ++c) row.push_back(read_cell(stmt, c));
      current.rows.push_back(std::move(row));
    }
    if (rc != SQLITE_DONE) {
      if (deadline.fired || rc == SQLITE_INTERRUPT) return timeout_error();
      return ExecutionError{ExecutionError::Kind::kRuntime, sqlite3_errmsg(db_)};
    }
    if (ncols > 0 || result.columns.empty()) result = std::move(current);
  }
  result.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - started);
  return result;
}

ExecOutcome SqliteConnector::run_catalog(const std::string& sql) {
  ++catalog_queries_;
  return execute(sql, Millis{60000});
}

SchemaMetadata SqliteConnector::get_schema() {
  if (!db_) throw ConnectionError("connection is closed");
  auto unwrap = [](ExecOutcome o) -> ExecutionResult {
    if (auto* err = std::get_if<ExecutionError>(&o)) {
      throw ConnectionError("catalog query failed: " + err->message);
    }
    return std::move(std::get<ExecutionResult>(o));
  };

  SchemaMetadata schema;
  schema.database_id = in_memory_ ? "memory" : std::filesystem::path(location_).stem().string();
  const auto tables = unwrap(run_catalog(
      "SELECT name FROM sqlite_master WHERE type = 'table' AND name NOT LIKE 'sqlite_%' "
      "ORDER BY name"));

  for (const auto& trow : tables.rows) {
    TableMeta table;
    table.name = text_at(trow, 0);
    const std::string quoted = quote_identifier(table.name);

    const auto cols = unwrap(run_catalog("PRAGMA table_info(" + quoted + ")"));
    std::vector<std::pair<std::int64_t, std::string>> pk;
    for (const auto& r : cols.rows) {
      ColumnMeta c;
      c.name = text_at(r, 1);
      c.declared_type = text_at(r, 2);
      c.nullable = int_at(r, 3) == 0;
      if (!std::holds_alternative<std::monostate>(r[4])) c.default_value = text_at(r, 4);
      if (int_at(r, 5) > 0) pk.emplace_back(int_at(r, 5), c.name);
      table.columns.push_back(std::move(c));
    }
    std::sort(pk.begin(), pk.end());
    for (auto& [_, name] : pk) table.primary_key.push_back(std::move(name));

    const auto fks = unwrap(run_catalog("PRAGMA foreign_key_list(" + quoted + ")"));
    std::map<std::int64_t, ForeignKey> by_id;
    for (const auto& r : fks.rows) {
      ForeignKey& fk = by_id[int_at(r, 0)];
      fk.referenced_table = text_at(r, 2);
      fk.columns.push_back(text_at(r, 3));
      const std::string to = text_at(r, 4);
      if (!to.empty()) fk.referenced_columns.push_back(to);
    }
    for (auto& [_, fk] : by_id) table.foreign_keys.push_back(std::move(fk));

    const auto idx = unwrap(run_catalog("PRAGMA index_list(" + quoted + ")"));
    for (const auto& r : idx.rows) {
      if (text_at(r, 3) != "c") continue;  // skip UNIQUE / PRIMARY KEY autoindexes
      IndexMeta ix;
      ix.name = text_at(r, 1);
      ix.unique = int_at(r, 2) != 0;
      const auto info = unwrap(run_catalog("PRAGMA index_info(" + quote_identifier(ix.name) + ")"));
      bool expression_index = false;
      for (const auto& ir : info.rows) {
        if (std::holds_alternative<std::monostate>(ir[2])) expression_index = true;
        ix.columns.push_back(text_at(ir, 2));
      }
      if (!expression_index) table.indexes.push_back(std::move(ix));
    }
    schema.tables.push_back(std::move(table));
  }

  // Foreign keys to tables that do not exist are dropped; references without
  // explicit columns point at the target's primary key.
  for (auto& table : schema.tables) {
    std::vector<ForeignKey> kept;
    for (auto& fk : table.foreign_keys) {
      const TableMeta* target = schema.find_table(fk.referenced_table);
      if (!target) continue;
      if (fk.referenced_columns.empty()) fk.referenced_columns = target->primary_key;
      kept.push_back(std::move(fk));
    }
    table.foreign_keys = std::move(kept);
  }
  return schema;
}

}  // namespace t2sf::db
