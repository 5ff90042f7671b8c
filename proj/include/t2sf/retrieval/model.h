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

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "t2sf/common/error.h"
#include "t2sf/sql/masking.h"

namespace t2sf::retrieval {

using Vector = std::vector<double>;

// Hashed n-gram counts, sorted by bucket, no repeated buckets.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;
  bool empty() const { return entries.empty(); }
};

inline constexpr std::size_t kDefaultFeatureCount = 16384;
inline constexpr std::size_t kDefaultDim = 256;
inline constexpr const char* kDefaultInstruction =
    "Find SQL queries whose masked structure answers this masked question:";

// Queries carry the instruction prefix; documents are embedded as they are.
enum class EmbedRole { kQuery, kDocument };

class ModelFormatError : public Error {
 public:
  using Error::Error;
};

// Lower-cased tokens of masked text: the mask token, word runs, two-character
// operators, and single punctuation characters.
std::vector<std::string> feature_tokens(std::string_view text, std::string_view mask_token);

// Unigram and bigram counts hashed into `feature_count` buckets.
SparseVector featurize(std::string_view text, std::size_t feature_count,
                       std::string_view mask_token = sql::kDefaultMaskToken);

// Throws std::invalid_argument on dimension mismatch.
double cosine_sim(const Vector& a, const Vector& b);

// A linear map from hashed features to unit vectors: e = normalize(P^T x).
class RetrieverModel {
 public:
  // Each feature f starts on axis f mod dim.
  static RetrieverModel untrained(std::size_t feature_count = kDefaultFeatureCount,
                                  std::size_t dim = kDefaultDim,
                                  std::string instruction_prefix = kDefaultInstruction);
  RetrieverModel(std::size_t feature_count, std::size_t dim, std::string instruction_prefix,
                 std::vector<double> projection);

  std::size_t feature_count() const { return feature_count_; }
  std::size_t dim() const { return dim_; }
  const std::string& instruction_prefix() const { return prefix_; }
  // Row-major F x dim.
  const std::vector<double>& projection() const { return projection_; }
  std::vector<double>& mutable_projection() { return projection_; }
  double weight(std::size_t f, std::size_t d) const { return projection_[f * dim_ + d]; }

  // Fingerprint of every parameter, so two models agree iff they embed alike.
  std::uint64_t version() const;

  SparseVector features(const sql::MaskedText& masked, EmbedRole role) const;
  // P^T x, before normalization.
  Vector project(const SparseVector& x) const;
  // Unit vector; a zero projection maps to the first basis vector.
  Vector embed_features(const SparseVector& x) const;
  Vector embed(const sql::MaskedText& masked, EmbedRole role = EmbedRole::kDocument) const;

  // Little-endian binary with a one-line text header.
  void save(const std::string& path) const;
  static RetrieverModel load(const std::string& path);

  bool operator==(const RetrieverModel&) const = default;

 private:
  std::size_t feature_count_;
  std::size_t dim_;
  std::string prefix_;
  std::vector<double> projection_;
};

}  // namespace t2sf::retrieval
