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

#include "t2sf/db/schema.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "t2sf/common/error.h"
#include "t2sf/common/strings.h"

namespace t2sf::db {

const ColumnMeta* TableMeta::find_column(const std::string& column) const {
  for (const auto& c : columns) {
    if (iequals(c.name, column)) return &c;
  }
  return nullptr;
}

const TableMeta* SchemaMetadata::find_table(const std::string& name) const {
  for (const auto& t : tables) {
    if (iequals(t.name, name)) return &t;
  }
  return nullptr;
}

namespace {

TableMeta canonical(TableMeta t) {
  auto by_name = [](const auto& a, const auto& b) { return a.name < b.name; };
  std::sort(t.indexes.begin(), t.indexes.end(), by_name);
  std::sort(t.foreign_keys.begin(), t.foreign_keys.end(), [](const auto& a, const auto& b) {
    return std::tie(a.referenced_table, a.columns) < std::tie(b.referenced_table, b.columns);
  });
  return t;
}

}  // namespace

bool SchemaMetadata::equivalent(const SchemaMetadata& other) const {
  if (tables.size() != other.tables.size()) return false;
  for (const auto& t : tables) {
    const TableMeta* o = other.find_table(t.name);
    if (!o || !(canonical(t) == canonical(*o))) return false;
  }
  return true;
}

void SchemaMetadata::validate() const {
  std::set<std::string> names;
  for (const auto& t : tables) {
    if (!names.insert(to_lower(t.name)).second) throw Error("duplicate table " + t.name);
  }
  for (const auto& t : tables) {
    for (const auto& pk : t.primary_key) {
      if (!t.find_column(pk)) throw Error("primary key column " + pk + " missing in " + t.name);
    }
    for (const auto& ix : t.indexes) {
      for (const auto& c : ix.columns) {
        if (!t.find_column(c)) throw Error("index column " + c + " missing in " + t.name);
      }
    }
    for (const auto& fk : t.foreign_keys) {
      if (!find_table(fk.referenced_table)) {
        throw Error("foreign key of " + t.name + " references unknown table " +
                    fk.referenced_table);
      }
    }
  }
}

void to_json(nlohmann::json& j, const ColumnMeta& c) {
  j = nlohmann::json{{"name", c.name}, {"type", c.declared_type}, {"nullable", c.nullable}};
  j["default"] = c.default_value ? nlohmann::json(*c.default_value) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, ColumnMeta& c) {
  j.at("name").get_to(c.name);
  j.at("type").get_to(c.declared_type);
  j.at("nullable").get_to(c.nullable);
  if (j.contains("default") && !j.at("default").is_null()) {
    c.default_value = j.at("default").get<std::string>();
  } else {
    c.default_value.reset();
  }
}

void to_json(nlohmann::json& j, const ForeignKey& fk) {
  j = nlohmann::json{{"columns", fk.columns},
                     {"referenced_table", fk.referenced_table},
                     {"referenced_columns", fk.referenced_columns}};
}

void from_json(const nlohmann::json& j, ForeignKey& fk) {
  j.at("columns").get_to(fk.columns);
  j.at("referenced_table").get_to(fk.referenced_table);
  j.at("referenced_columns").get_to(fk.referenced_columns);
}

void to_json(nlohmann::json& j, const IndexMeta& ix) {
  j = nlohmann::json{{"name", ix.name}, {"columns", ix.columns}, {"unique", ix.unique}};
}

void from_json(const nlohmann::json& j, IndexMeta& ix) {
  j.at("name").get_to(ix.name);
  j.at("columns").get_to(ix.columns);
  j.at("unique").get_to(ix.unique);
}

void to_json(nlohmann::json& j, const TableMeta& t) {
  j = nlohmann::json{{"name", t.name},
                     {"columns", t.columns},
                     {"primary_key", t.primary_key},
                     {"foreign_keys", t.foreign_keys},
                     {"indexes", t.indexes}};
}

void from_json(const nlohmann::json& j, TableMeta& t) {
  j.at("name").get_to(t.name);
  j.at("columns").get_to(t.columns);
  j.at("primary_key").get_to(t.primary_key);
  j.at("foreign_keys").get_to(t.foreign_keys);
  j.at("indexes").get_to(t.indexes);
}

void to_json(nlohmann::json& j, const SchemaMetadata& s) {
  j = nlohmann::json{{"database_id", s.database_id}, {"tables", s.tables}};
}

void from_json(const nlohmann::json& j, SchemaMetadata& s) {
  j.at("database_id").get_to(s.database_id);
  j.at("tables").get_to(s.tables);
}

std::string quote_identifier(const std::string& name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

namespace {

std::string column_list(const std::vector<std::string>& cols) {
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ", ";
    out += quote_identifier(cols[i]);
  }
  return out;
}

}  // namespace

std::string render_ddl(const TableMeta& table) {
  std::string out = "CREATE TABLE " + quote_identifier(table.name) + " (\n";
  std::vector<std::string> items;
  for (const auto& c : table.columns) {
    std::string line = "  " + quote_identifier(c.name);
    if (!c.declared_type.empty()) line += " " + c.declared_type;
    if (!c.nullable) line += " NOT NULL";
    if (c.default_value) line += " DEFAULT (" + *c.default_value + ")";
    items.push_back(std::move(line));
  }
  if (!table.primary_key.empty()) {
    items.push_back("  PRIMARY KEY (" + column_list(table.primary_key) + ")");
  }
  for (const auto& fk : table.foreign_keys) {
    std::string line = "  FOREIGN KEY (" + column_list(fk.columns) + ") REFERENCES " +
                       quote_identifier(fk.referenced_table);
    if (!fk.referenced_columns.empty()) line += " (" + column_list(fk.referenced_columns) + ")";
    items.push_back(std::move(line));
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += items[i];
    out += i + 1 < items.size() ? ",\n" : "\n";
  }
  out += ");";
  for (const auto& ix : table.indexes) {
    out += "\nCREATE ";
    if (ix.unique) out += "UNIQUE ";
    out += "INDEX " + quote_identifier(ix.name) + " ON " + quote_identifier(table.name) + " (" +
           column_list(ix.columns) + ");";
  }
  return out;
}

std::string render_ddl(const SchemaMetadata& schema) {
  std::vector<const TableMeta*> sorted;
  for (const auto& t : schema.tables) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [](const TableMeta* a, const TableMeta* b) { return a->name < b->name; });
  std::string out;
  for (const TableMeta* t : sorted) {
    if (!out.empty()) out += "\n\n";
    out += render_ddl(*t);
  }
  return out;
}

}  // namespace t2sf::db
