//
// Copyright 2026 The pate-learn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "pate/learners.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "pate/errors.h"

namespace pate {
namespace {

// log(1 + exp(z)) without overflow.
double Softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void RequireLabeled(const Dataset& data, const char* op) {
  if (data.empty()) throw ParameterError(std::string(op) + ": empty dataset");
  if (!data.AllLabeled()) {
    throw ParameterError(std::string(op) + ": dataset has unlabeled examples");
  }
}

// Mean weighted logistic loss plus ridge term.
double Objective(const Dataset& data, std::span<const double> weights,
                 double weight_sum, const LinearHypothesis& h, double l2) {
  double loss = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double sign = *data[i].label == 1 ? 1.0 : -1.0;
    loss += weights[i] * Softplus(-sign * h.Score(data[i]));
  }
  double ridge = 0.0;
  for (double w : h.weights) ridge += w * w;
  return loss / weight_sum + 0.5 * l2 * ridge;
}

}  // namespace

double LinearHypothesis::Score(const Example& x) const {
  double s = bias;
  for (const Feature& f : x.features) {
    if (f.index < weights.size()) s += weights[f.index] * f.value;
  }
  return s;
}

int Predict(const LinearHypothesis& h, const Example& x) {
  return h.Score(x) >= 0.0 ? 1 : 0;
}

LinearHypothesis TrainErm(const Dataset& data, const TrainerConfig& config) {
  const std::vector<double> ones(data.size(), 1.0);
  return TrainErmTraced(data, ones, config).hypothesis;
}

TrainingTrace TrainErmTraced(const Dataset& data,
                             std::span<const double> weights,
                             const TrainerConfig& config) {
  RequireLabeled(data, "TrainErm");
  if (weights.size() != data.size()) {
    throw ParameterError("TrainErm: weight count does not match data");
  }
  const double weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(weight_sum > 0.0)) throw ParameterError("TrainErm: zero total weight");

  // Smoothness of the mean logistic loss: (1/4) sum_i w_i ||(x_i, 1)||^2 / W.
  double smoothness = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double norm2 = 1.0;
    for (const Feature& f : data[i].features) norm2 += f.value * f.value;
    smoothness += weights[i] * norm2;
  }
  smoothness = 0.25 * smoothness / weight_sum + config.l2;
  const double step = 1.0 / smoothness;

  TrainingTrace trace;
  LinearHypothesis& h = trace.hypothesis;
  h.weights.assign(data.dimension(), 0.0);
  trace.loss.push_back(Objective(data, weights, weight_sum, h, config.l2));

  std::vector<double> grad(data.dimension());
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_bias = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double residual =
          weights[i] * (Sigmoid(h.Score(data[i])) - *data[i].label);
      grad_bias += residual;
      for (const Feature& f : data[i].features) {
        grad[f.index] += residual * f.value;
      }
    }
    double norm2 = 0.0;
    grad_bias /= weight_sum;
    norm2 += grad_bias * grad_bias;
    for (std::size_t j = 0; j < grad.size(); ++j) {
      grad[j] = grad[j] / weight_sum + config.l2 * h.weights[j];
      norm2 += grad[j] * grad[j];
    }
    if (norm2 < config.gradient_tolerance) break;
    for (std::size_t j = 0; j < grad.size(); ++j) h.weights[j] -= step * grad[j];
    h.bias -= step * grad_bias;
    trace.loss.push_back(Objective(data, weights, weight_sum, h, config.l2));
  }
  return trace;
}

double EmpiricalError(const LinearHypothesis& h, const Dataset& data) {
  RequireLabeled(data, "EmpiricalError");
  std::size_t mistakes = 0;
  for (const Example& x : data) mistakes += Predict(h, x) != *x.label;
  return static_cast<double>(mistakes) / static_cast<double>(data.size());
}

double EmpiricalDisagreement(const LinearHypothesis& h1,
                             const LinearHypothesis& h2, const Dataset& data) {
  if (data.empty()) throw ParameterError("EmpiricalDisagreement: empty data");
  std::size_t differ = 0;
  for (const Example& x : data) differ += Predict(h1, x) != Predict(h2, x);
  return static_cast<double>(differ) / static_cast<double>(data.size());
}

std::vector<std::vector<std::size_t>> SplitIndices(std::size_t n,
                                                   std::size_t k, Rng& rng) {
  if (k == 0) throw ParameterError("SplitDisjoint: k must be >= 1");
  if (k > n) {
    throw ParameterError("SplitDisjoint: k = " + std::to_string(k) +
                         " exceeds dataset size " + std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Shuffle(std::span<std::size_t>(order), rng);
  std::vector<std::vector<std::size_t>> parts(k);
  // The first n % k parts get one extra element.
  std::size_t pos = 0;
  for (std::size_t p = 0; p < k; ++p) {
    const std::size_t size = n / k + (p < n % k ? 1 : 0);
    parts[p].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                    order.begin() + static_cast<std::ptrdiff_t>(pos + size));
    pos += size;
  }
  return parts;
}

std::vector<Dataset> SplitDisjoint(const Dataset& data, std::size_t k,
                                   Rng& rng) {
  std::vector<Dataset> out;
  for (const auto& part : SplitIndices(data.size(), k, rng)) {
    out.push_back(data.Select(part));
  }
  return out;
}

Ensemble::Ensemble(std::vector<LinearHypothesis> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw ParameterError("Ensemble needs K >= 1 members");
}

VoteCount Ensemble::Votes(const Example& x) const {
  std::int64_t ones = 0;
  for (const LinearHypothesis& h : members_) ones += Predict(h, x);
  return VoteCount(ones, static_cast<std::int64_t>(members_.size()));
}

Ensemble TrainVotingStudent(const Dataset& pseudo_labeled, std::size_t k,
                            const TrainerConfig& config, Rng& rng) {
  std::vector<LinearHypothesis> members;
  if (k == 1) {
    members.push_back(TrainErm(pseudo_labeled, config));
    return Ensemble(std::move(members));
  }
  for (const Dataset& part : SplitDisjoint(pseudo_labeled, k, rng)) {
    members.push_back(TrainErm(part, config));
  }
  return Ensemble(std::move(members));
}

double EnsembleError(const Ensemble& ensemble, const Dataset& data) {
  RequireLabeled(data, "EnsembleError");
  std::size_t mistakes = 0;
  for (const Example& x : data) mistakes += ensemble.MajorityLabel(x) != *x.label;
  return static_cast<double>(mistakes) / static_cast<double>(data.size());
}

}  // namespace pate
