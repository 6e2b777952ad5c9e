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

#include <memory>
#include <string>
#include <vector>

#include "trustgate/ml/models.hpp"
#include "trustgate/ml/vocab.hpp"
#include "trustgate/text.hpp"

namespace trustgate::ml {

struct Verdict {
  double score = 0.0;
  Sensitivity label = Sensitivity::kBenign;
  double threshold = 0.5;
};

/// Sensitive iff score >= threshold; a tie fails closed. Throws kRange when
/// threshold is outside (0, 1).
Verdict classify(double score, double threshold);

/// Sensitivity scorer run by the trusted application. Implementations are
/// immutable and safe to call concurrently.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual double score(const Transcript& transcript) const = 0;
  virtual std::string name() const = 0;

  Verdict classify(const Transcript& transcript, double threshold) const {
    return ml::classify(score(transcript), threshold);
  }
};

/// Scores 1 when the transcript contains a keyword, 0 otherwise. Agrees with
/// the corpus generator's ground truth by construction.
class KeywordOracle final : public Classifier {
 public:
  explicit KeywordOracle(std::vector<std::string> keywords) : keywords_(std::move(keywords)) {}
  double score(const Transcript& transcript) const override;
  std::string name() const override { return "oracle"; }

 private:
  std::vector<std::string> keywords_;
};

class ModelClassifier final : public Classifier {
 public:
  ModelClassifier(Model model, Vocab vocab);
  double score(const Transcript& transcript) const override;
  std::string name() const override;

  const Model& model() const { return model_; }
  const Vocab& vocab() const { return vocab_; }

 private:
  Model model_;
  Vocab vocab_;
};

}  // namespace trustgate::ml
