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

#include "t2sf/db/connector.h"

#include <map>
#include <mutex>

#include "t2sf/db/sqlite_connector.h"

namespace t2sf::db {

void ConnectorConfig::validate() const {
  if (default_timeout.count() <= 0) throw ConfigError("default_timeout must be positive");
  if (max_connections < 1) throw ConfigError("max_connections must be at least 1");
  if (location.empty()) throw ConfigError("database location is empty");
}

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, ConnectorFactory>& registry() {
  static std::map<std::string, ConnectorFactory> r{
      {"sqlite", [] { return std::make_unique<SqliteConnector>(); }}};
  return r;
}

}  // namespace

void register_connector(const std::string& name, ConnectorFactory factory) {
  std::lock_guard lock(registry_mutex());
  registry()[name] = std::move(factory);
}

std::unique_ptr<DatabaseConnector> make_connector(const std::string& name) {
  std::lock_guard lock(registry_mutex());
  auto it = registry().find(name);
  if (it == registry().end()) throw ConfigError("unknown database backend: " + name);
  return it->second();
}

}  // namespace t2sf::db
