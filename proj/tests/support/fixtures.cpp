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

#include "fixtures.h"

#include <atomic>
#include <optional>
#include <random>
#include <stdexcept>

#include <sqlite3.h>

namespace t2sf::testing {

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("t2sf_test_" + std::to_string(rd()) + "_" + std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

void sqlite_exec(const std::string& db_path, const std::string& script) {
  sqlite3* db = nullptr;
  if (sqlite3_open(db_path.c_str(), &db) != SQLITE_OK) {
    std::string msg = db ? sqlite3_errmsg(db) : "open failed";
    sqlite3_close(db);
    throw std::runtime_error(msg);
  }
  char* err = nullptr;
  if (sqlite3_exec(db, script.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
    std::string msg = err ? err : "exec failed";
    sqlite3_free(err);
    sqlite3_close(db);
    throw std::runtime_error(msg);
  }
  sqlite3_close(db);
}

std::vector<std::string> sqlite_column(const std::string& db_path, const std::string& query) {
  sqlite3* db = nullptr;
  if (sqlite3_open_v2(db_path.c_str(), &db, SQLITE_OPEN_READONLY, nullptr) != SQLITE_OK) {
    sqlite3_close(db);
    throw std::runtime_error("open failed");
  }
  sqlite3_stmt* stmt = nullptr;
  if (sqlite3_prepare_v2(db, query.c_str(), -1, &stmt, nullptr) != SQLITE_OK) {
    std::string msg = sqlite3_errmsg(db);
    sqlite3_close(db);
    throw std::runtime_error(msg);
  }
  std::vector<std::string> out;
  while (sqlite3_step(stmt) == SQLITE_ROW) {
    const unsigned char* text = sqlite3_column_text(stmt, 0);
    out.emplace_back(text ? reinterpret_cast<const char*>(text) : "NULL");
  }
  sqlite3_finalize(stmt);
  sqlite3_close(db);
  return out;
}

std::optional<std::vector<std::string>> sqlite_rows(const std::string& db_path,
                                                    const std::string& query) {
  sqlite3* db = nullptr;
  if (sqlite3_open_v2(db_path.c_str(), &db, SQLITE_OPEN_READONLY, nullptr) != SQLITE_OK) {
    sqlite3_close(db);
    return std::nullopt;
  }
  sqlite3_stmt* stmt = nullptr;
  if (sqlite3_prepare_v2(db, query.c_str(), -1, &stmt, nullptr) != SQLITE_OK || !stmt) {
    sqlite3_finalize(stmt);
    sqlite3_close(db);
    return std::nullopt;
  }
  std::vector<std::string> out;
  int rc;
  while ((rc = sqlite3_step(stmt)) == SQLITE_ROW) {
    std::string row;
    for (int c = 0; c < sqlite3_column_count(stmt); ++c) {
      const unsigned char* text = sqlite3_column_text(stmt, c);
      if (c) row += '|';
      row += text ? reinterpret_cast<const char*>(text) : "NULL";
    }
    out.push_back(std::move(row));
  }
  sqlite3_finalize(stmt);
  sqlite3_close(db);
  if (rc != SQLITE_DONE) return std::nullopt;
  return out;
}

const char* const kConcertScript = R"sql(
CREATE TABLE stadium (
  stadium_id INTEGER PRIMARY KEY,
  name TEXT,
  capacity INTEGER DEFAULT 0
);
CREATE TABLE singer (
  singer_id INTEGER PRIMARY KEY,
  name TEXT NOT NULL,
  country TEXT,
  age INTEGER,
  song_name TEXT
);
CREATE TABLE concert (
  concert_id INTEGER PRIMARY KEY,
  concert_name TEXT,
  stadium_id INTEGER,
  year TEXT,
  FOREIGN KEY (stadium_id) REFERENCES stadium(stadium_id)
);
CREATE TABLE singer_in_concert (
  concert_id INTEGER,
  singer_id INTEGER,
  PRIMARY KEY (concert_id, singer_id),
  FOREIGN KEY (concert_id) REFERENCES concert(concert_id),
  FOREIGN KEY (singer_id) REFERENCES singer(singer_id)
);
CREATE INDEX singer_country_idx ON singer(country);
INSERT INTO stadium VALUES (1, 'Stark''s Park', 10104), (2, 'Glebe Park', 4125), (3, 'Somerset Park', 11998);
INSERT INTO singer VALUES
  (1, 'Joe Sharp', 'Netherlands', 52, 'You'),
  (2, 'Timbaland', 'United States', 32, 'Dangerous'),
  (3, 'Justin Brown', 'France', 29, 'Hey Oh'),
  (4, 'Rose White', 'France', 41, 'Sun'),
  (5, 'John Nizinik', 'France', 43, 'Gentleman'),
  (6, 'Tribal King', 'France', 25, 'Love');
INSERT INTO concert VALUES
  (1, 'Auditions', 1, '2014'),
  (2, 'Super bootcamp', 2, '2014'),
  (3, 'Home Visits', 2, '2015'),
  (4, 'Week 1', 3, '2015');
INSERT INTO singer_in_concert VALUES (1, 2), (1, 3), (1, 5), (2, 3), (2, 6), (3, 5);
)sql";

std::string make_concert_db(const TempDir& dir, const std::string& name) {
  const std::string path = dir.file(name);
  sqlite_exec(path, kConcertScript);
  return path;
}

}  // namespace t2sf::testing
