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
#include <map>
#include <vector>

#include "t2sf/retrieval/model.h"

namespace t2sf::retrieval {

// -log softmax of the positive among {positive} + negatives, at temperature tau.
// Throws std::invalid_argument when tau <= 0.
double infonce_loss(double sim_pos, const std::vector<double>& sim_negs, double tau);

struct ContrastiveSample {
  SparseVector query;
  SparseVector positive;
  std::vector<SparseVector> negatives;
};

// Gradient of the batch-mean loss, keyed by feature row; each row has dim entries.
struct ProjectionGradient {
  std::map<std::uint32_t, std::vector<double>> rows;
  std::vector<double> to_dense(std::size_t feature_count, std::size_t dim) const;
};

double infonce_batch_loss(const RetrieverModel& model, const std::vector<ContrastiveSample>& batch,
                          double tau);

// Analytic gradient through the projection, the L2 normalization and the
// cosine similarities. Returns the batch-mean loss through `loss` if given.
ProjectionGradient infonce_grad(const RetrieverModel& model,
                                const std::vector<ContrastiveSample>& batch, double tau,
                                double* loss = nullptr);

}  // namespace t2sf::retrieval
