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
#include <vector>

#include "t2sf/retrieval/infonce.h"
#include "t2sf/retrieval/model.h"

namespace t2sf::retrieval {

struct TrainingConfig {
  double temperature = 0.05;
  int negatives_per_sample = 30;
  double learning_rate = 0.05;
  int epochs = 3;
  int batch_size = 16;
  std::uint64_t rng_seed = 42;
  // Samples in the fixed-negative validation replay.
  std::size_t validation_size = 256;

  // Throws std::invalid_argument.
  void validate() const;
};

struct TrainingPair {
  std::string question;
  std::string sql;
};

struct TrainingReport {
  std::vector<double> train_loss;       // mean minibatch loss per epoch
  std::vector<double> validation_loss;  // [0] before training, then one per kept epoch
  int epochs_completed = 0;
  bool halted = false;
  std::string diagnostics;
  std::size_t skipped_pairs = 0;  // SQL that failed to parse
};

struct TrainingResult {
  RetrieverModel model;
  TrainingReport report;
};

class DatasetTooSmallError : public Error {
 public:
  using Error::Error;
};

// The masked question is the query, its masked SQL the positive, and other
// pairs' masked SQL the negatives. Deterministic for a given config.
TrainingResult train_retriever(const std::vector<TrainingPair>& dataset, const TrainingConfig& config,
                               const RetrieverModel& initial);

// A paired question is masked with the identifiers and string values of its own SQL.
sql::MaskedText mask_pair_question(const std::string& question, const std::string& sql);

}  // namespace t2sf::retrieval
