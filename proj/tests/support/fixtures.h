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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace t2sf::testing {

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

// Runs a script against a SQLite file directly through the C API, creating
// the file if needed. Throws std::runtime_error on failure.
void sqlite_exec(const std::string& db_path, const std::string& script);

// Single-column query results rendered as text, for test oracles.
std::vector<std::string> sqlite_column(const std::string& db_path, const std::string& query);

// All rows of a query, columns joined with '|', or nullopt when the query
// fails to prepare or run.
std::optional<std::vector<std::string>> sqlite_rows(const std::string& db_path,
                                                    const std::string& query);

// The concert fixture: stadium, singer, concert, singer_in_concert.
//   stadium(stadium_id PK, name, capacity DEFAULT 0)   3 rows
//   singer(singer_id PK, name NOT NULL, country, age, song_name)  6 rows
//   concert(concert_id PK, concert_name, stadium_id -> stadium, year)  4 rows
//   singer_in_concert(concert_id -> concert, singer_id -> singer) PK both  6 rows
//   index singer_country_idx on singer(country)
extern const char* const kConcertScript;

std::string make_concert_db(const TempDir& dir, const std::string& name = "concert.sqlite");

}  // namespace t2sf::testing
