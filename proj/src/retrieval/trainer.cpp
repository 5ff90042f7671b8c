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

#include "t2sf/retrieval/trainer.h"

#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "t2sf/common/rng.h"
#include "t2sf/sql/token.h"

namespace t2sf::retrieval {
namespace {

struct Encoded {
  SparseVector query;
  SparseVector sql;
};

std::vector<std::size_t> draw_negatives(Rng& rng, std::size_t n, std::size_t exclude, std::size_t k) {
  std::vector<std::size_t> pool;
  pool.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != exclude) pool.push_back(i);
  }
  k = std::min(k, pool.size());
  // Partial Fisher-Yates: the first k slots become a uniform sample.
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + rng.uniform_index(pool.size() - i)]);
  }
  pool.resize(k);
  return pool;
}

ContrastiveSample make_sample(const std::vector<Encoded>& data, std::size_t i,
                              const std::vector<std::size_t>& negs) {
  ContrastiveSample s{data[i].query, data[i].sql, {}};
  s.negatives.reserve(negs.size());
  for (std::size_t j : negs) s.negatives.push_back(data[j].sql);
  return s;
}

}  // namespace

void TrainingConfig::validate() const {
  if (!(temperature > 0)) throw std::invalid_argument("temperature must be positive");
  if (negatives_per_sample < 1) throw std::invalid_argument("negatives_per_sample must be >= 1");
  if (!(learning_rate > 0)) throw std::invalid_argument("learning_rate must be positive");
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (validation_size < 1) throw std::invalid_argument("validation_size must be >= 1");
}

sql::MaskedText mask_pair_question(const std::string& question, const std::string& sql) {
  return sql::mask_question(question, sql::sql_vocabulary(sql));
}

TrainingResult train_retriever(const std::vector<TrainingPair>& dataset, const TrainingConfig& config,
                               const RetrieverModel& initial) {
  config.validate();
  TrainingReport report;
  std::vector<Encoded> data;
  data.reserve(dataset.size());
  for (const auto& pair : dataset) {
    try {
      data.push_back({initial.features(mask_pair_question(pair.question, pair.sql), EmbedRole::kQuery),
                      initial.features(sql::mask_sql(pair.sql), EmbedRole::kDocument)});
    } catch (const sql::ParseError&) {
      ++report.skipped_pairs;
    }
  }
  if (data.size() < 2) {
    throw DatasetTooSmallError(
        fmt::format("training needs at least 2 usable pairs, got {}", data.size()));
  }
  const std::size_t n = data.size();
  const auto k = static_cast<std::size_t>(config.negatives_per_sample);

  // Validation replay: fixed samples with fixed negatives.
  std::vector<ContrastiveSample> validation;
  {
    Rng vrng(Rng::derive(config.rng_seed, 1));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    vrng.shuffle(order);
    order.resize(std::min(n, config.validation_size));
    for (std::size_t i : order) validation.push_back(make_sample(data, i, draw_negatives(vrng, n, i, k)));
  }

  RetrieverModel model = initial;
  report.validation_loss.push_back(infonce_batch_loss(model, validation, config.temperature));
  Rng rng(Rng::derive(config.rng_seed, 0));
  const auto batch_size = static_cast<std::size_t>(config.batch_size);
  const std::size_t dim = model.dim();

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    RetrieverModel before = model;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    double loss_sum = 0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < n; start += batch_size) {
      std::vector<ContrastiveSample> batch;
      for (std::size_t b = start; b < std::min(n, start + batch_size); ++b) {
        batch.push_back(make_sample(data, order[b], draw_negatives(rng, n, order[b], k)));
      }
      double loss = 0;
      const ProjectionGradient grad = infonce_grad(model, batch, config.temperature, &loss);
      auto& p = model.mutable_projection();
      for (const auto& [f, row] : grad.rows) {
        double* dst = &p[static_cast<std::size_t>(f) * dim];
        for (std::size_t d = 0; d < dim; ++d) dst[d] -= config.learning_rate * row[d];
      }
      loss_sum += loss;
      ++batches;
    }
    const double val = infonce_batch_loss(model, validation, config.temperature);
    if (val > report.validation_loss.back()) {
      report.halted = true;
      report.diagnostics = fmt::format(
          "validation loss rose from {:.6f} to {:.6f} in epoch {} (mean train loss {:.6f}); "
          "kept the weights from before that epoch",
          report.validation_loss.back(), val, epoch + 1, loss_sum / static_cast<double>(batches));
      model = std::move(before);
      break;
    }
    report.train_loss.push_back(loss_sum / static_cast<double>(batches));
    report.validation_loss.push_back(val);
    ++report.epochs_completed;
  }
  return {std::move(model), std::move(report)};
}

}  // namespace t2sf::retrieval
