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

#include "t2sf/db/value.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace t2sf::db {

std::string to_sql_literal(const Value& v) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "NULL"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const {
      if (std::isnan(d)) return "NULL";
      if (std::isinf(d)) return d > 0 ? "9e999" : "-9e999";
      std::string s = fmt::format("{:.17g}", d);
      if (s.find_first_of(".eE") == std::string::npos) s += ".0";
      return s;
    }
    std::string operator()(const std::string& s) const {
      std::string out = "'";
      for (char c : s) {
        if (c == '\'') out.push_back('\'');
        out.push_back(c);
      }
      out.push_back('\'');
      return out;
    }
    std::string operator()(const Blob& b) const {
      std::string out = "X'";
      for (auto byte : b.bytes) out += fmt::format("{:02x}", byte);
      out.push_back('\'');
      return out;
    }
  };
  return std::visit(Visitor{}, v);
}

std::string to_display(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return to_sql_literal(v);
}

nlohmann::json to_json_value(const Value& v) {
  struct Visitor {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(std::int64_t i) const { return i; }
    nlohmann::json operator()(double d) const { return d; }
    nlohmann::json operator()(const std::string& s) const { return s; }
    nlohmann::json operator()(const Blob& b) const { return to_sql_literal(Value{b}); }
  };
  return std::visit(Visitor{}, v);
}

std::string to_string(ExecutionError::Kind k) {
  switch (k) {
    case ExecutionError::Kind::kSyntax: return "syntax";
    case ExecutionError::Kind::kRuntime: return "runtime";
    case ExecutionError::Kind::kTimeout: return "timeout";
    case ExecutionError::Kind::kConnection: return "connection";
  }
  return "runtime";
}

namespace {

std::optional<double> as_number(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  return std::nullopt;
}

// Total order for sorting rows before multiset comparison: NULL < numbers <
// text < blob, mirroring SQLite's ordering.
int type_rank(const Value& v) {
  if (std::holds_alternative<std::monostate>(v)) return 0;
  if (as_number(v)) return 1;
  if (std::holds_alternative<std::string>(v)) return 2;
  return 3;
}

bool value_less(const Value& a, const Value& b) {
  const int ra = type_rank(a);
  const int rb = type_rank(b);
  if (ra != rb) return ra < rb;
  switch (ra) {
    case 1: return *as_number(a) < *as_number(b);
    case 2: return std::get<std::string>(a) < std::get<std::string>(b);
    case 3: return std::get<Blob>(a).bytes < std::get<Blob>(b).bytes;
    default: return false;
  }
}

bool row_less(const Row& a, const Row& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), value_less);
}

bool rows_equal(const Row& a, const Row& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!values_equal(a[i], b[i], tol)) return false;
  }
  return true;
}

}  // namespace

bool values_equal(const Value& a, const Value& b, double abs_tol) {
  const auto na = as_number(a);
  const auto nb = as_number(b);
  if (na && nb) return std::fabs(*na - *nb) <= abs_tol || *na == *nb;
  return a == b;
}

ComparisonOutcome compare_results(const ExecutionResult& a, const ExecutionResult& b,
                                  ComparisonOutcome::Mode mode, double abs_tol) {
  ComparisonOutcome out;
  out.mode = mode;
  if (a.columns.size() != b.columns.size()) {
    out.detail = fmt::format("column count differs: {} vs {}", a.columns.size(), b.columns.size());
    return out;
  }
  if (a.rows.size() != b.rows.size()) {
    out.detail = fmt::format("row count differs: {} vs {}", a.rows.size(), b.rows.size());
    return out;
  }
  const std::vector<Row>* left = &a.rows;
  const std::vector<Row>* right = &b.rows;
  std::vector<Row> sorted_a;
  std::vector<Row> sorted_b;
  if (mode == ComparisonOutcome::Mode::kMultiset) {
    sorted_a = a.rows;
    sorted_b = b.rows;
    std::sort(sorted_a.begin(), sorted_a.end(), row_less);
    std::sort(sorted_b.begin(), sorted_b.end(), row_less);
    left = &sorted_a;
    right = &sorted_b;
  }
  for (std::size_t i = 0; i < left->size(); ++i) {
    if (!rows_equal((*left)[i], (*right)[i], abs_tol)) {
      out.detail = fmt::format("rows differ at {} {}", mode == ComparisonOutcome::Mode::kOrdered
                                                           ? "position"
                                                           : "sorted position",
                               i);
      return out;
    }
  }
  out.equal = true;
  return out;
}

}  // namespace t2sf::db
