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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "trustgate/ml/models.hpp"
#include "trustgate/text.hpp"

namespace trustgate::ml {

struct Example {
  std::vector<Token> tokens;
  Sensitivity label = Sensitivity::kBenign;
};

struct Hyperparams {
  double learning_rate = 0.5;
  std::size_t epochs = 200;
  std::uint64_t seed = 1;
  std::size_t dim = 16;
  std::size_t filters = 8;
  std::size_t width = 3;
};

struct LossAndGradient {
  double loss = 0.0;
  Model gradient;
};

/// Mean binary cross-entropy of the model's logistic scores.
double mean_loss(const Model& model, std::span<const Example> corpus);

/// Mean loss and its exact gradient with respect to every parameter.
LossAndGradient loss_and_gradient(const Model& model, std::span<const Example> corpus);

struct TrainResult {
  Model model;
  std::vector<double> loss_history;  // loss before each epoch's update
};

/// Full-batch gradient descent from a seeded initialization. Deterministic
/// for a fixed seed, corpus and kernel backend. Throws kDegenerateCorpus
/// when the corpus is empty or holds a single label.
TrainResult train(Architecture arch, std::span<const Example> corpus, std::size_t vocab_size,
                  const Hyperparams& hp);

/// Continues gradient descent on an existing model.
std::vector<double> descend(Model& model, std::span<const Example> corpus,
                            double learning_rate, std::size_t epochs);

double accuracy(const Model& model, std::span<const Example> corpus, double threshold = 0.5);

}  // namespace trustgate::ml
