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

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "t2sf/common/error.h"
#include "t2sf/db/schema.h"
#include "t2sf/db/value.h"

namespace t2sf::db {

using Millis = std::chrono::milliseconds;

inline constexpr Millis kDefaultTimeout{5000};

struct ConnectorConfig {
  std::string backend = "sqlite";  // key into the connector registry
  std::string location;            // file path or URI
  Millis default_timeout = kDefaultTimeout;
  int max_connections = 4;

  // Throws ConfigError on a non-positive timeout or connection count.
  void validate() const;
};

class ConnectionError : public Error {
 public:
  using Error::Error;
};

// One live connection to one database. Implementations are used by at most
// one thread at a time; the manager serializes access.
class DatabaseConnector {
 public:
  virtual ~DatabaseConnector() = default;

  // Throws ConnectionError when the location is missing or rejected.
  virtual void connect(const ConnectorConfig& config) = 0;
  virtual ExecOutcome execute(std::string_view sql, Millis timeout) = 0;
  // Reads the catalog. Throws ConnectionError.
  virtual SchemaMetadata get_schema() = 0;
  virtual void close() = 0;

  // Number of catalog queries issued so far by get_schema().
  virtual std::uint64_t catalog_query_count() const = 0;
  // False when extra connections would not see the same data (in-memory).
  virtual bool shareable() const { return true; }
};

using ConnectorFactory = std::function<std::unique_ptr<DatabaseConnector>()>;

// Registers a backend under `name`; "sqlite" is registered by default.
void register_connector(const std::string& name, ConnectorFactory factory);
std::unique_ptr<DatabaseConnector> make_connector(const std::string& name);

}  // namespace t2sf::db
