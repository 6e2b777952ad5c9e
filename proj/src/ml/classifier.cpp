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

#include "trustgate/ml/classifier.hpp"

#include "trustgate/error.hpp"

namespace trustgate::ml {

Verdict classify(double score, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::kRange, "threshold must lie in (0, 1)");
  }
  return {score, score >= threshold ? Sensitivity::kSensitive : Sensitivity::kBenign, threshold};
}

double KeywordOracle::score(const Transcript& transcript) const {
  return keyword_rule(transcript.text, keywords_) == Sensitivity::kSensitive ? 1.0 : 0.0;
}

ModelClassifier::ModelClassifier(Model model, Vocab vocab)
    : model_(std::move(model)), vocab_(std::move(vocab)) {
  const auto rows = std::visit(
      [](const auto& m) -> std::size_t {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, HybridModel>) {
          return m.cnn.embedding.rows;
        } else {
          return m.embedding.rows;
        }
      },
      model_);
  if (rows < vocab_.size()) {
    throw Error(ErrorCode::kModelFormat, "model embeds " + std::to_string(rows) +
                                             " words, vocabulary has " +
                                             std::to_string(vocab_.size()));
  }
}

double ModelClassifier::score(const Transcript& transcript) const {
  return ml::score(model_, tokenize(transcript.text, vocab_));
}

std::string ModelClassifier::name() const {
  return std::string(to_string(architecture_of(model_)));
}

}  // namespace trustgate::ml
