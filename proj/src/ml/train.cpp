// Copyright 2026 The TrustGate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trustgate/ml/train.hpp"

#include <cmath>
#include <string>

#include "trustgate/error.hpp"
#include "trustgate/ml/kernels.hpp"

namespace trustgate::ml {

namespace {

double target(Sensitivity label) { return label == Sensitivity::kSensitive ? 1.0 : 0.0; }

// -log(sigmoid(z)) for y=1, -log(1 - sigmoid(z)) for y=0, without overflow.
double cross_entropy(double logit, double y) {
  const double softplus = logit > 0 ? logit + std::log1p(std::exp(-logit))
                                    : std::log1p(std::exp(logit));
  return softplus - y * logit;
}

}  // namespace

double mean_loss(const Model& model, std::span<const Example> corpus) {
  double total = 0.0;
  for (const auto& ex : corpus) total += cross_entropy(model_logit(model, ex.tokens), target(ex.label));
  return total / static_cast<double>(corpus.size());
}

LossAndGradient loss_and_gradient(const Model& model, std::span<const Example> corpus) {
  LossAndGradient out{0.0, zeros_like(model)};
  const double inv_n = 1.0 / static_cast<double>(corpus.size());
  for (const auto& ex : corpus) {
    const double logit = model_logit(model, ex.tokens);
    const double y = target(ex.label);
    out.loss += cross_entropy(logit, y) * inv_n;
    accumulate_gradient(model, ex.tokens, (logistic(logit) - y) * inv_n, out.gradient);
  }
  return out;
}

std::vector<double> descend(Model& model, std::span<const Example> corpus,
                            double learning_rate, std::size_t epochs) {
  std::vector<double> history;
  history.reserve(epochs);
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    auto step = loss_and_gradient(model, corpus);
    history.push_back(step.loss);

    std::vector<std::span<const double>> grads;
    for_each_tensor(step.gradient, [&](std::span<const double> g) { grads.push_back(g); });
    std::size_t i = 0;
    for_each_tensor(model, [&](std::span<double> p) { kernels::axpy(-learning_rate, grads[i++], p); });

    if (!all_finite(model)) {
      throw Error(ErrorCode::kRange,
                  "parameters diverged at epoch " + std::to_string(epoch) + "; lower the rate");
    }
  }
  return history;
}

TrainResult train(Architecture arch, std::span<const Example> corpus, std::size_t vocab_size,
                  const Hyperparams& hp) {
  if (corpus.empty()) throw Error(ErrorCode::kDegenerateCorpus, "empty corpus");
  bool has_sensitive = false;
  bool has_benign = false;
  for (const auto& ex : corpus) {
    (ex.label == Sensitivity::kSensitive ? has_sensitive : has_benign) = true;
  }
  if (!has_sensitive || !has_benign) {
    throw Error(ErrorCode::kDegenerateCorpus, "corpus holds a single label");
  }
  TrainResult result{init_model(arch, vocab_size, hp.dim, hp.filters, hp.width, hp.seed), {}};
  result.loss_history = descend(result.model, corpus, hp.learning_rate, hp.epochs);
  return result;
}

double accuracy(const Model& model, std::span<const Example> corpus, double threshold) {
  if (corpus.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& ex : corpus) {
    const auto predicted =
        score(model, ex.tokens) >= threshold ? Sensitivity::kSensitive : Sensitivity::kBenign;
    if (predicted == ex.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(corpus.size());
}

}  // namespace trustgate::ml
