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

#include "trustgate/ml/models.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "trustgate/error.hpp"
#include "trustgate/ml/kernels.hpp"

namespace trustgate::ml {

std::string_view to_string(Architecture arch) {
  switch (arch) {
    case Architecture::kCnn: return "cnn";
    case Architecture::kAttention: return "attention";
    case Architecture::kHybrid: return "hybrid";
  }
  return "unknown";
}

Architecture parse_architecture(std::string_view name) {
  if (name == "cnn") return Architecture::kCnn;
  if (name == "attention") return Architecture::kAttention;
  if (name == "hybrid") return Architecture::kHybrid;
  throw Error(ErrorCode::kConfig, "unknown architecture '" + std::string(name) + "'");
}

Architecture architecture_of(const Model& model) {
  return static_cast<Architecture>(model.index() + 1);
}

double logistic(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

std::vector<Token> padded(std::span<const Token> tokens, std::size_t min_length) {
  std::vector<Token> out(tokens.begin(), tokens.end());
  if (out.size() < min_length) out.resize(min_length, kUnknownToken);
  return out;
}

void check_tokens(std::span<const Token> tokens, const Matrix& embedding) {
  for (auto t : tokens) {
    if (t >= embedding.rows) {
      throw Error(ErrorCode::kRange, "token " + std::to_string(t) + " outside vocabulary of " +
                                         std::to_string(embedding.rows));
    }
  }
}

// ---- convolution ----------------------------------------------------------

struct ConvCache {
  std::vector<Token> tokens;
  Matrix windows;  // positions x (w * d)
  Matrix pre;      // positions x F
  Matrix act;      // positions x F
};

ConvCache conv_forward(const CnnModel& m, std::span<const Token> input) {
  ConvCache c;
  c.tokens = padded(input, m.width);
  check_tokens(c.tokens, m.embedding);
  const std::size_t d = m.dim();
  const std::size_t w = m.width;
  const std::size_t positions = c.tokens.size() - w + 1;
  const std::size_t filters = m.num_filters();
  c.windows = Matrix(positions, w * d);
  c.pre = Matrix(positions, filters);
  c.act = Matrix(positions, filters);
  for (std::size_t p = 0; p < positions; ++p) {
    auto window = c.windows.row(p);
    for (std::size_t k = 0; k < w; ++k) {
      auto e = m.embedding.row(c.tokens[p + k]);
      std::copy(e.begin(), e.end(), window.begin() + static_cast<std::ptrdiff_t>(k * d));
    }
    for (std::size_t f = 0; f < filters; ++f) {
      const double v = kernels::dot(window, m.filters.row(f));
      c.pre(p, f) = v;
      c.act(p, f) = v > 0.0 ? v : 0.0;
    }
  }
  return c;
}

void conv_backward(const CnnModel& m, const ConvCache& c, const Matrix& dact, CnnModel& g) {
  const std::size_t d = m.dim();
  std::vector<double> dwindow(m.width * d);
  for (std::size_t p = 0; p < c.pre.rows; ++p) {
    std::fill(dwindow.begin(), dwindow.end(), 0.0);
    bool touched = false;
    for (std::size_t f = 0; f < c.pre.cols; ++f) {
      const double dpre = c.pre(p, f) > 0.0 ? dact(p, f) : 0.0;
      if (dpre == 0.0) continue;
      kernels::axpy(dpre, c.windows.row(p), g.filters.row(f));
      kernels::axpy(dpre, m.filters.row(f), dwindow);
      touched = true;
    }
    if (!touched) continue;
    for (std::size_t k = 0; k < m.width; ++k) {
      kernels::axpy(1.0, std::span<const double>(dwindow).subspan(k * d, d),
                    g.embedding.row(c.tokens[p + k]));
    }
  }
}

// ---- self-attention ---------------------------------------------------------

struct AttentionCache {
  Matrix x, q, k, v;
  Matrix weights;  // n x n
  Matrix out;      // n x d
  std::vector<double> pooled;
};

// rows of `out` = rows of `in` times `proj`.
Matrix project(const Matrix& in, const Matrix& proj) {
  Matrix out(in.rows, proj.cols);
  for (std::size_t i = 0; i < in.rows; ++i) {
    auto dst = out.row(i);
    for (std::size_t r = 0; r < proj.rows; ++r) {
      if (in(i, r) != 0.0) kernels::axpy(in(i, r), proj.row(r), dst);
    }
  }
  return out;
}

AttentionCache attention_forward_cache(const AttentionEncoder& e, Matrix x) {
  AttentionCache c;
  c.x = std::move(x);
  const std::size_t n = c.x.rows;
  const std::size_t d = e.dim();
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  c.q = project(c.x, e.query);
  c.k = project(c.x, e.key);
  c.v = project(c.x, e.value);
  c.weights = Matrix(n, n);
  c.out = Matrix(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = c.weights.row(i);
    double top = -INFINITY;
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = kernels::dot(c.q.row(i), c.k.row(j)) * scale;
      top = std::max(top, row[j]);
    }
    double total = 0.0;
    for (auto& s : row) {
      s = std::exp(s - top);
      total += s;
    }
    for (auto& s : row) s /= total;
    for (std::size_t j = 0; j < n; ++j) kernels::axpy(row[j], c.v.row(j), c.out.row(i));
  }
  c.pooled.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    kernels::axpy(1.0 / static_cast<double>(n), c.out.row(i), c.pooled);
  }
  return c;
}

double attention_head(const AttentionEncoder& e, const AttentionCache& c) {
  return kernels::dot(e.head, c.pooled) + e.head_bias;
}

// Accumulates encoder gradients into g and returns d(logit)/dx scaled by dlogit.
Matrix attention_backward(const AttentionEncoder& e, const AttentionCache& c, double dlogit,
                          AttentionEncoder& g) {
  const std::size_t n = c.x.rows;
  const std::size_t d = e.dim();
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));

  kernels::axpy(dlogit, c.pooled, g.head);
  g.head_bias += dlogit;

  // Every output row receives the same gradient from the mean pool.
  std::vector<double> dout(d, 0.0);
  kernels::axpy(dlogit / static_cast<double>(n), e.head, dout);

  Matrix dq(n, d), dk(n, d), dv(n, d);
  std::vector<double> dweights(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto a = c.weights.row(i);
    double mix = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      dweights[j] = kernels::dot(dout, c.v.row(j));
      mix += a[j] * dweights[j];
      kernels::axpy(a[j], dout, dv.row(j));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double ds = a[j] * (dweights[j] - mix) * scale;
      if (ds == 0.0) continue;
      kernels::axpy(ds, c.k.row(j), dq.row(i));
      kernels::axpy(ds, c.q.row(i), dk.row(j));
    }
  }

  Matrix dx(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < d; ++r) {
      const double xr = c.x(i, r);
      if (xr != 0.0) {
        kernels::axpy(xr, dq.row(i), g.query.row(r));
        kernels::axpy(xr, dk.row(i), g.key.row(r));
        kernels::axpy(xr, dv.row(i), g.value.row(r));
      }
      dx(i, r) = kernels::dot(e.query.row(r), dq.row(i)) +
                 kernels::dot(e.key.row(r), dk.row(i)) +
                 kernels::dot(e.value.row(r), dv.row(i));
    }
  }
  return dx;
}

Matrix embed(const Matrix& embedding, std::span<const Token> tokens) {
  check_tokens(tokens, embedding);
  Matrix x(tokens.size(), embedding.cols);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto src = embedding.row(tokens[i]);
    std::copy(src.begin(), src.end(), x.row(i).begin());
  }
  return x;
}

// ---- per-architecture passes --------------------------------------------------

struct CnnPass {
  ConvCache conv;
  std::vector<double> pooled;
  std::vector<std::size_t> argmax;
  double logit = 0.0;
};

CnnPass run_cnn(const CnnModel& m, std::span<const Token> tokens) {
  CnnPass pass;
  pass.conv = conv_forward(m, tokens);
  const std::size_t filters = m.num_filters();
  pass.pooled.assign(filters, 0.0);
  pass.argmax.assign(filters, 0);
  for (std::size_t f = 0; f < filters; ++f) {
    double best = pass.conv.act(0, f);
    for (std::size_t p = 1; p < pass.conv.act.rows; ++p) {
      if (pass.conv.act(p, f) > best) {
        best = pass.conv.act(p, f);
        pass.argmax[f] = p;
      }
    }
    pass.pooled[f] = best;
  }
  pass.logit = kernels::dot(m.fc_weights, pass.pooled) + m.fc_bias;
  return pass;
}

struct HybridPass {
  ConvCache conv;
  AttentionCache attention;
  double logit = 0.0;
};

HybridPass run_hybrid(const CnnModel& cnn, const Matrix& projection,
                      const AttentionEncoder& encoder, std::span<const Token> tokens) {
  HybridPass pass;
  pass.conv = conv_forward(cnn, tokens);
  pass.attention = attention_forward_cache(encoder, project(pass.conv.act, projection));
  pass.logit = attention_head(encoder, pass.attention);
  return pass;
}

AttentionCache run_attention(const AttentionEncoder& e, std::span<const Token> tokens) {
  return attention_forward_cache(e, embed(e.embedding, padded(tokens, 1)));
}

void fill_uniform(std::span<double> values, double bound, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (auto& v : values) v = dist(rng);
}

CnnModel make_cnn(std::size_t vocab, std::size_t d, std::size_t filters, std::size_t width) {
  CnnModel m;
  m.embedding = Matrix(vocab, d);
  m.filters = Matrix(filters, width * d);
  m.fc_weights.assign(filters, 0.0);
  m.width = width;
  return m;
}

AttentionEncoder make_encoder(std::size_t vocab, std::size_t d) {
  AttentionEncoder e;
  e.embedding = Matrix(vocab, d);
  e.query = Matrix(d, d);
  e.key = Matrix(d, d);
  e.value = Matrix(d, d);
  e.head.assign(d, 0.0);
  return e;
}

}  // namespace

double cnn_logit(const CnnModel& model, std::span<const Token> tokens) {
  return run_cnn(model, tokens).logit;
}

double attention_logit(const AttentionEncoder& encoder, std::span<const Token> tokens) {
  return attention_head(encoder, run_attention(encoder, tokens));
}

double hybrid_logit(const CnnModel& cnn, const Matrix& projection,
                    const AttentionEncoder& encoder, std::span<const Token> tokens) {
  return run_hybrid(cnn, projection, encoder, tokens).logit;
}

double cnn_forward(const CnnModel& model, std::span<const Token> tokens) {
  return logistic(cnn_logit(model, tokens));
}

double attention_forward(const AttentionEncoder& encoder, std::span<const Token> tokens) {
  return logistic(attention_logit(encoder, tokens));
}

double hybrid_forward(const CnnModel& cnn, const Matrix& projection,
                      const AttentionEncoder& encoder, std::span<const Token> tokens) {
  return logistic(hybrid_logit(cnn, projection, encoder, tokens));
}

double model_logit(const Model& model, std::span<const Token> tokens) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CnnModel>) {
          return cnn_logit(m, tokens);
        } else if constexpr (std::is_same_v<T, AttentionEncoder>) {
          return attention_logit(m, tokens);
        } else {
          return hybrid_logit(m.cnn, m.projection, m.encoder, tokens);
        }
      },
      model);
}

double score(const Model& model, std::span<const Token> tokens) {
  return logistic(model_logit(model, tokens));
}

Matrix attention_weights(const AttentionEncoder& encoder, std::span<const Token> tokens) {
  return run_attention(encoder, tokens).weights;
}

void accumulate_gradient(const Model& model, std::span<const Token> tokens, double dlogit,
                         Model& grad) {
  if (model.index() != grad.index()) {
    throw Error(ErrorCode::kRange, "gradient accumulator has a different architecture");
  }
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        auto& g = std::get<T>(grad);
        if constexpr (std::is_same_v<T, CnnModel>) {
          auto pass = run_cnn(m, tokens);
          kernels::axpy(dlogit, pass.pooled, g.fc_weights);
          g.fc_bias += dlogit;
          Matrix dact(pass.conv.act.rows, pass.conv.act.cols);
          for (std::size_t f = 0; f < m.num_filters(); ++f) {
            dact(pass.argmax[f], f) = dlogit * m.fc_weights[f];
          }
          conv_backward(m, pass.conv, dact, g);
        } else if constexpr (std::is_same_v<T, AttentionEncoder>) {
          auto cache = run_attention(m, tokens);
          auto dx = attention_backward(m, cache, dlogit, g);
          auto tok = padded(tokens, 1);
          for (std::size_t i = 0; i < tok.size(); ++i) {
            kernels::axpy(1.0, dx.row(i), g.embedding.row(tok[i]));
          }
        } else {
          auto pass = run_hybrid(m.cnn, m.projection, m.encoder, tokens);
          auto dx = attention_backward(m.encoder, pass.attention, dlogit, g.encoder);
          const auto& act = pass.conv.act;
          Matrix dact(act.rows, act.cols);
          for (std::size_t p = 0; p < act.rows; ++p) {
            for (std::size_t f = 0; f < act.cols; ++f) {
              if (act(p, f) != 0.0) kernels::axpy(act(p, f), dx.row(p), g.projection.row(f));
              dact(p, f) = kernels::dot(m.projection.row(f), dx.row(p));
            }
          }
          conv_backward(m.cnn, pass.conv, dact, g.cnn);
        }
      },
      model);
}

Model init_model(Architecture arch, std::size_t vocab_size, std::size_t dim,
                 std::size_t filters, std::size_t width, std::uint64_t seed) {
  if (vocab_size == 0 || dim == 0) throw Error(ErrorCode::kConfig, "empty model dimensions");
  if (arch != Architecture::kAttention && (filters == 0 || width == 0)) {
    throw Error(ErrorCode::kConfig, "convolution needs at least one filter of width >= 1");
  }
  std::mt19937_64 rng(seed);
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(dim));
  auto init_cnn = [&](CnnModel& m, bool with_head) {
    fill_uniform(m.embedding.data, 0.5, rng);
    fill_uniform(m.filters.data, 1.0 / std::sqrt(static_cast<double>(width * dim)), rng);
    if (with_head) fill_uniform(m.fc_weights, 0.5, rng);
  };
  auto init_encoder = [&](AttentionEncoder& e, bool with_embedding) {
    if (with_embedding) fill_uniform(e.embedding.data, 0.5, rng);
    fill_uniform(e.query.data, inv_sqrt_d, rng);
    fill_uniform(e.key.data, inv_sqrt_d, rng);
    fill_uniform(e.value.data, inv_sqrt_d, rng);
    fill_uniform(e.head, 0.5, rng);
  };
  switch (arch) {
    case Architecture::kCnn: {
      auto m = make_cnn(vocab_size, dim, filters, width);
      init_cnn(m, true);
      return m;
    }
    case Architecture::kAttention: {
      auto e = make_encoder(vocab_size, dim);
      init_encoder(e, true);
      return e;
    }
    case Architecture::kHybrid: {
      HybridModel h{make_cnn(vocab_size, dim, filters, width), Matrix(filters, dim),
                    make_encoder(vocab_size, dim)};
      init_cnn(h.cnn, false);
      fill_uniform(h.projection.data, 1.0 / std::sqrt(static_cast<double>(filters)), rng);
      init_encoder(h.encoder, false);
      return h;
    }
  }
  throw Error(ErrorCode::kConfig, "unknown architecture");
}

Model zeros_like(const Model& model) {
  Model z = model;
  for_each_tensor(z, [](std::span<double> t) { std::fill(t.begin(), t.end(), 0.0); });
  return z;
}

bool all_finite(const Model& model) {
  bool ok = true;
  for_each_tensor(model, [&](std::span<const double> t) {
    ok = ok && std::all_of(t.begin(), t.end(), [](double v) { return std::isfinite(v); });
  });
  return ok;
}

}  // namespace trustgate::ml
