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

#include "t2sf/retrieval/model.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "t2sf/common/hash.h"

namespace t2sf::retrieval {
namespace {

constexpr std::string_view kMagic = "T2SF-RETRIEVER";
constexpr int kFormatVersion = 1;
constexpr std::string_view kTwoCharOps[] = {">=", "<=", "<>", "!=", "==", "||"};

bool word_char(unsigned char c) { return std::isalnum(c) != 0 || c == '_' || c >= 0x80; }

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

void put_le(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(buf, 8);
}

double get_le(const char* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

std::vector<std::string> feature_tokens(std::string_view text, std::string_view mask_token) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (!mask_token.empty() && text.substr(i, mask_token.size()) == mask_token) {
      out.emplace_back(mask_token);
      i += mask_token.size();
      continue;
    }
    if (word_char(c)) {
      std::size_t j = i;
      std::string w;
      while (j < text.size() && word_char(static_cast<unsigned char>(text[j]))) {
        w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[j]))));
        ++j;
      }
      out.push_back(std::move(w));
      i = j;
      continue;
    }
    const auto two = text.substr(i, 2);
    if (std::find(std::begin(kTwoCharOps), std::end(kTwoCharOps), two) != std::end(kTwoCharOps)) {
      out.emplace_back(two);
      i += 2;
      continue;
    }
    out.emplace_back(1, static_cast<char>(c));
    ++i;
  }
  return out;
}

SparseVector featurize(std::string_view text, std::size_t feature_count, std::string_view mask_token) {
  if (feature_count == 0) throw std::invalid_argument("feature_count must be positive");
  const auto tokens = feature_tokens(text, mask_token);
  std::map<std::uint32_t, double> counts;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    counts[static_cast<std::uint32_t>(fnv1a64(tokens[i]) % feature_count)] += 1.0;
    if (i + 1 < tokens.size()) {
      const std::string bigram = tokens[i] + ' ' + tokens[i + 1];
      counts[static_cast<std::uint32_t>(fnv1a64(bigram) % feature_count)] += 1.0;
    }
  }
  SparseVector x;
  x.entries.assign(counts.begin(), counts.end());
  return x;
}

double cosine_sim(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(fmt::format("dimension mismatch: {} vs {}", a.size(), b.size()));
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

RetrieverModel RetrieverModel::untrained(std::size_t feature_count, std::size_t dim,
                                         std::string instruction_prefix) {
  if (feature_count == 0 || dim == 0) throw std::invalid_argument("model sizes must be positive");
  std::vector<double> p(feature_count * dim, 0.0);
  for (std::size_t f = 0; f < feature_count; ++f) p[f * dim + f % dim] = 1.0;
  return RetrieverModel(feature_count, dim, std::move(instruction_prefix), std::move(p));
}

RetrieverModel::RetrieverModel(std::size_t feature_count, std::size_t dim,
                               std::string instruction_prefix, std::vector<double> projection)
    : feature_count_(feature_count),
      dim_(dim),
      prefix_(std::move(instruction_prefix)),
      projection_(std::move(projection)) {
  if (feature_count_ == 0 || dim_ == 0) throw std::invalid_argument("model sizes must be positive");
  if (projection_.size() != feature_count_ * dim_) {
    throw std::invalid_argument("projection size does not match feature_count x dim");
  }
}

std::uint64_t RetrieverModel::version() const {
  std::uint64_t h = fnv1a64(fmt::format("{}|{}|{}|", feature_count_, dim_, prefix_));
  for (double v : projection_) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    h = fnv1a64(std::string_view(buf, 8), h);
  }
  // Keep it within the exact-integer range of JSON readers.
  return h & ((std::uint64_t{1} << 53) - 1);
}

SparseVector RetrieverModel::features(const sql::MaskedText& masked, EmbedRole role) const {
  if (role == EmbedRole::kQuery && !prefix_.empty()) {
    return featurize(prefix_ + " " + masked.text, feature_count_, masked.mask_token);
  }
  return featurize(masked.text, feature_count_, masked.mask_token);
}

Vector RetrieverModel::project(const SparseVector& x) const {
  Vector u(dim_, 0.0);
  for (const auto& [f, value] : x.entries) {
    const double* row = &projection_[static_cast<std::size_t>(f) * dim_];
    for (std::size_t d = 0; d < dim_; ++d) u[d] += value * row[d];
  }
  return u;
}

Vector RetrieverModel::embed_features(const SparseVector& x) const {
  Vector u = project(x);
  double norm = 0;
  for (double v : u) norm += v * v;
  norm = std::sqrt(norm);
  if (norm == 0) {
    Vector e(dim_, 0.0);
    e[0] = 1.0;
    return e;
  }
  for (double& v : u) v /= norm;
  return u;
}

Vector RetrieverModel::embed(const sql::MaskedText& masked, EmbedRole role) const {
  return embed_features(features(masked, role));
}

void RetrieverModel::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write model file: " + path);
  out << kMagic << ' ' << kFormatVersion << ' ' << feature_count_ << ' ' << dim_ << ' '
      << prefix_.size() << '\n';
  out.write(prefix_.data(), static_cast<std::streamsize>(prefix_.size()));
  for (double v : projection_) put_le(out, v);
  if (!out) throw Error("write failed: " + path);
}

RetrieverModel RetrieverModel::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file: " + path);
  std::string header;
  if (!std::getline(in, header)) throw ModelFormatError("missing model header in " + path);
  std::istringstream hs(header);
  std::string magic;
  int format = 0;
  std::size_t f = 0, dim = 0, prefix_len = 0;
  if (!(hs >> magic >> format >> f >> dim >> prefix_len) || magic != kMagic) {
    throw ModelFormatError("not a retriever model file: " + path);
  }
  if (format != kFormatVersion) {
    throw ModelFormatError(fmt::format("unsupported model format {} in {}", format, path));
  }
  if (f == 0 || dim == 0 || f > (std::size_t{1} << 26) || dim > 4096) {
    throw ModelFormatError("implausible model sizes in " + path);
  }
  std::string prefix(prefix_len, '\0');
  in.read(prefix.data(), static_cast<std::streamsize>(prefix_len));
  std::vector<char> raw(f * dim * 8);
  in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (!in || in.peek() != std::char_traits<char>::eof()) {
    throw ModelFormatError("model file has the wrong length: " + path);
  }
  std::vector<double> p(f * dim);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = get_le(raw.data() + 8 * i);
  return RetrieverModel(f, dim, std::move(prefix), std::move(p));
}

}  // namespace t2sf::retrieval
