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
#include <vector>

#include <nlohmann/json.hpp>

namespace t2sf::db {

struct ColumnMeta {
  std::string name;
  std::string declared_type;
  bool nullable = true;
  std::optional<std::string> default_value;  // SQL expression text

  bool operator==(const ColumnMeta&) const = default;
};

struct ForeignKey {
  std::vector<std::string> columns;
  std::string referenced_table;
  std::vector<std::string> referenced_columns;

  bool operator==(const ForeignKey&) const = default;
};

struct IndexMeta {
  std::string name;
  std::vector<std::string> columns;
  bool unique = false;

  bool operator==(const IndexMeta&) const = default;
};

struct TableMeta {
  std::string name;
  std::vector<ColumnMeta> columns;
  std::vector<std::string> primary_key;
  std::vector<ForeignKey> foreign_keys;
  std::vector<IndexMeta> indexes;  // explicitly created indexes only

  const ColumnMeta* find_column(const std::string& column) const;
  bool operator==(const TableMeta&) const = default;
};

// Structured description of a database. Tables are kept sorted by name.
struct SchemaMetadata {
  std::string database_id;
  std::vector<TableMeta> tables;

  const TableMeta* find_table(const std::string& name) const;
  // Same tables/columns/keys/indexes, ignoring database_id and list order.
  bool equivalent(const SchemaMetadata& other) const;
  // Throws Error describing the first broken invariant.
  void validate() const;
};

void to_json(nlohmann::json& j, const ColumnMeta& c);
void from_json(const nlohmann::json& j, ColumnMeta& c);
void to_json(nlohmann::json& j, const ForeignKey& fk);
void from_json(const nlohmann::json& j, ForeignKey& fk);
void to_json(nlohmann::json& j, const IndexMeta& ix);
void from_json(const nlohmann::json& j, IndexMeta& ix);
void to_json(nlohmann::json& j, const TableMeta& t);
void from_json(const nlohmann::json& j, TableMeta& t);
void to_json(nlohmann::json& j, const SchemaMetadata& s);
void from_json(const nlohmann::json& j, SchemaMetadata& s);

// CREATE TABLE statement for one table, followed by its CREATE INDEX
// statements.
std::string render_ddl(const TableMeta& table);
// All tables in name order, blank-line separated. Empty schema -> "".
std::string render_ddl(const SchemaMetadata& schema);

std::string quote_identifier(const std::string& name);

}  // namespace t2sf::db
