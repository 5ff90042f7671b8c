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

#include "t2sf/retrieval/infonce.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace t2sf::retrieval {
namespace {

void check_tau(double tau) {
  if (!(tau > 0)) throw std::invalid_argument("temperature must be positive");
}

struct Embedded {
  Vector v;     // unit vector
  double norm;  // |u| before normalization; 0 means the canonical fallback
};

Embedded embed_with_norm(const RetrieverModel& model, const SparseVector& x) {
  Vector u = model.project(x);
  double norm = 0;
  for (double a : u) norm += a * a;
  norm = std::sqrt(norm);
  if (norm == 0) {
    Vector e(model.dim(), 0.0);
    e[0] = 1.0;
    return {std::move(e), 0.0};
  }
  for (double& a : u) a /= norm;
  return {std::move(u), norm};
}

double dot(const Vector& a, const Vector& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Pushes dL/dv back through v = u/|u| and u = P^T x into the row gradients.
void backprop(const SparseVector& x, const Embedded& e, const Vector& dv, double scale,
              ProjectionGradient& grad) {
  if (e.norm == 0) return;
  const double proj = dot(e.v, dv);
  const std::size_t dim = e.v.size();
  Vector du(dim);
  for (std::size_t d = 0; d < dim; ++d) du[d] = (dv[d] - e.v[d] * proj) / e.norm;
  for (const auto& [f, value] : x.entries) {
    auto& row = grad.rows[f];
    if (row.empty()) row.assign(dim, 0.0);
    for (std::size_t d = 0; d < dim; ++d) row[d] += scale * value * du[d];
  }
}

}  // namespace

double infonce_loss(double sim_pos, const std::vector<double>& sim_negs, double tau) {
  check_tau(tau);
  double m = sim_pos / tau;
  for (double s : sim_negs) m = std::max(m, s / tau);
  double sum = std::exp(sim_pos / tau - m);
  for (double s : sim_negs) sum += std::exp(s / tau - m);
  return std::max(0.0, m + std::log(sum) - sim_pos / tau);
}

std::vector<double> ProjectionGradient::to_dense(std::size_t feature_count, std::size_t dim) const {
  std::vector<double> out(feature_count * dim, 0.0);
  for (const auto& [f, row] : rows) {
    std::copy(row.begin(), row.end(), out.begin() + static_cast<std::ptrdiff_t>(f * dim));
  }
  return out;
}

double infonce_batch_loss(const RetrieverModel& model, const std::vector<ContrastiveSample>& batch,
                          double tau) {
  check_tau(tau);
  if (batch.empty()) return 0.0;
  double total = 0;
  for (const auto& s : batch) {
    const Vector q = model.embed_features(s.query);
    const double pos = dot(q, model.embed_features(s.positive));
    std::vector<double> negs;
    negs.reserve(s.negatives.size());
    for (const auto& n : s.negatives) negs.push_back(dot(q, model.embed_features(n)));
    total += infonce_loss(pos, negs, tau);
  }
  return total / static_cast<double>(batch.size());
}

ProjectionGradient infonce_grad(const RetrieverModel& model,
                                const std::vector<ContrastiveSample>& batch, double tau,
                                double* loss) {
  check_tau(tau);
  ProjectionGradient grad;
  double total = 0;
  const double scale = batch.empty() ? 0.0 : 1.0 / static_cast<double>(batch.size());
  for (const auto& s : batch) {
    const Embedded q = embed_with_norm(model, s.query);
    std::vector<Embedded> cands;
    cands.reserve(1 + s.negatives.size());
    cands.push_back(embed_with_norm(model, s.positive));
    for (const auto& n : s.negatives) cands.push_back(embed_with_norm(model, n));

    std::vector<double> logits(cands.size());
    for (std::size_t j = 0; j < cands.size(); ++j) logits[j] = dot(q.v, cands[j].v) / tau;
    const double m = *std::max_element(logits.begin(), logits.end());
    double z = 0;
    for (double l : logits) z += std::exp(l - m);
    total += std::max(0.0, m + std::log(z) - logits[0]);

    // dL/dsim_j = (softmax_j - [j == positive]) / tau
    Vector dq(model.dim(), 0.0);
    for (std::size_t j = 0; j < cands.size(); ++j) {
      const double g = (std::exp(logits[j] - m) / z - (j == 0 ? 1.0 : 0.0)) / tau;
      for (std::size_t d = 0; d < dq.size(); ++d) dq[d] += g * cands[j].v[d];
      Vector dc(model.dim());
      for (std::size_t d = 0; d < dc.size(); ++d) dc[d] = g * q.v[d];
      backprop(j == 0 ? s.positive : s.negatives[j - 1], cands[j], dc, scale, grad);
    }
    backprop(s.query, q, dq, scale, grad);
  }
  if (loss) *loss = batch.empty() ? 0.0 : total * scale;
  return grad;
}

}  // namespace t2sf::retrieval
