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
#include <string_view>
#include <variant>
#include <vector>

#include "trustgate/ml/matrix.hpp"
#include "trustgate/ml/vocab.hpp"

namespace trustgate::ml {

enum class Architecture : std::uint32_t { kCnn = 1, kAttention = 2, kHybrid = 3 };

std::string_view to_string(Architecture arch);
Architecture parse_architecture(std::string_view name);

/// Embedding -> width-w valid convolution with ReLU -> max over positions
/// -> linear -> logistic.
struct CnnModel {
  Matrix embedding;         // V x d
  Matrix filters;           // F x (w * d), row f is filter f laid out position-major
  std::vector<double> fc_weights;  // F
  double fc_bias = 0.0;
  std::size_t width = 1;

  std::size_t dim() const { return embedding.cols; }
  std::size_t num_filters() const { return filters.rows; }
  friend bool operator==(const CnnModel&, const CnnModel&) = default;
};

/// Embedding -> single-head scaled dot-product self-attention -> mean over
/// positions -> linear -> logistic. Projections act on row vectors: q = x Wq.
struct AttentionEncoder {
  Matrix embedding;  // V x d
  Matrix query;      // d x d
  Matrix key;        // d x d
  Matrix value;      // d x d
  std::vector<double> head;  // d
  double head_bias = 0.0;

  std::size_t dim() const { return embedding.cols; }
  friend bool operator==(const AttentionEncoder&, const AttentionEncoder&) = default;
};

/// CNN feature maps (no pooling) projected to d and classified by the
/// attention encoder. Only the CNN's embedding and filters and the encoder's
/// projections and head take part; the other fields stay untouched.
struct HybridModel {
  CnnModel cnn;
  Matrix projection;  // F x d
  AttentionEncoder encoder;
  friend bool operator==(const HybridModel&, const HybridModel&) = default;
};

using Model = std::variant<CnnModel, AttentionEncoder, HybridModel>;

Architecture architecture_of(const Model& model);

/// Fresh model with seeded uniform initialization.
Model init_model(Architecture arch, std::size_t vocab_size, std::size_t dim,
                 std::size_t filters, std::size_t width, std::uint64_t seed);

/// Zero-valued model with the same shape, used as a gradient accumulator.
Model zeros_like(const Model& model);

/// Visits every parameter tensor in serialization order.
template <typename M, typename Fn>
void for_each_tensor(M& model, Fn&& fn);

double logistic(double z);

// Forward passes return the pre-logistic logit; the *_forward functions
// return the logistic score in [0, 1]. Token sequences shorter than the
// convolution width (or empty, for attention) are right-padded with the
// unknown token.
double cnn_logit(const CnnModel& model, std::span<const Token> tokens);
double attention_logit(const AttentionEncoder& encoder, std::span<const Token> tokens);
double hybrid_logit(const CnnModel& cnn, const Matrix& projection,
                    const AttentionEncoder& encoder, std::span<const Token> tokens);
double model_logit(const Model& model, std::span<const Token> tokens);

double cnn_forward(const CnnModel& model, std::span<const Token> tokens);
double attention_forward(const AttentionEncoder& encoder, std::span<const Token> tokens);
double hybrid_forward(const CnnModel& cnn, const Matrix& projection,
                      const AttentionEncoder& encoder, std::span<const Token> tokens);
double score(const Model& model, std::span<const Token> tokens);

/// Post-softmax attention matrix (n x n) for the encoder's own embeddings.
Matrix attention_weights(const AttentionEncoder& encoder, std::span<const Token> tokens);

/// Adds dlogit * d(logit)/d(param) into `grad`, which must have the shape
/// of `model`.
void accumulate_gradient(const Model& model, std::span<const Token> tokens, double dlogit,
                         Model& grad);

/// True when every parameter is finite.
bool all_finite(const Model& model);

// ---------------------------------------------------------------------------

template <typename M, typename Fn>
void for_each_tensor(M& model, Fn&& fn) {
  auto scalar = [](auto& x) { return std::span(&x, 1); };
  auto visit_cnn = [&](auto& m) {
    fn(std::span(m.embedding.data));
    fn(std::span(m.filters.data));
    fn(std::span(m.fc_weights));
    fn(scalar(m.fc_bias));
  };
  auto visit_attention = [&](auto& m) {
    fn(std::span(m.embedding.data));
    fn(std::span(m.query.data));
    fn(std::span(m.key.data));
    fn(std::span(m.value.data));
    fn(std::span(m.head));
    fn(scalar(m.head_bias));
  };
  std::visit(
      [&](auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CnnModel>) {
          visit_cnn(m);
        } else if constexpr (std::is_same_v<T, AttentionEncoder>) {
          visit_attention(m);
        } else {
          visit_cnn(m.cnn);
          fn(std::span(m.projection.data));
          visit_attention(m.encoder);
        }
      },
      model);
}

}  // namespace trustgate::ml
