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

#include "trustgate/ml/model_io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iterator>

#include "trustgate/bytes.hpp"
#include "trustgate/error.hpp"

namespace trustgate::ml {

namespace {

constexpr std::array<std::uint8_t, 4> kModelMagic = {'T', 'G', 'M', '1'};
constexpr std::uint32_t kMaxDimension = 1u << 20;

struct Shape {
  std::uint32_t vocab = 0, dim = 0, filters = 0, width = 0;
};

Shape shape_of(const Model& model) {
  return std::visit(
      [](const auto& m) -> Shape {
        using T = std::decay_t<decltype(m)>;
        auto u = [](std::size_t v) { return static_cast<std::uint32_t>(v); };
        if constexpr (std::is_same_v<T, CnnModel>) {
          return {u(m.embedding.rows), u(m.dim()), u(m.num_filters()), u(m.width)};
        } else if constexpr (std::is_same_v<T, AttentionEncoder>) {
          return {u(m.embedding.rows), u(m.dim()), 0, 0};
        } else {
          return {u(m.cnn.embedding.rows), u(m.cnn.dim()), u(m.cnn.num_filters()), u(m.cnn.width)};
        }
      },
      model);
}

}  // namespace

std::vector<std::uint8_t> serialize_model(const Model& model) {
  const auto s = shape_of(model);
  bytes::Buffer out;
  bytes::put_bytes(out, kModelMagic);
  bytes::put_u32(out, static_cast<std::uint32_t>(architecture_of(model)));
  bytes::put_u32(out, s.vocab);
  bytes::put_u32(out, s.dim);
  bytes::put_u32(out, s.filters);
  bytes::put_u32(out, s.width);
  for_each_tensor(model, [&](std::span<const double> t) {
    for (double v : t) bytes::put_f64(out, v);
  });
  return out;
}

Model deserialize_model(std::span<const std::uint8_t> image) {
  bytes::Reader in(image, ErrorCode::kModelFormat);
  auto magic = in.take(4);
  if (!std::equal(magic.begin(), magic.end(), kModelMagic.begin())) {
    throw Error(ErrorCode::kModelFormat, "bad model magic");
  }
  const auto arch_tag = in.u32();
  Shape s{in.u32(), in.u32(), in.u32(), in.u32()};
  if (arch_tag < 1 || arch_tag > 3) throw Error(ErrorCode::kModelFormat, "unknown architecture");
  const auto arch = static_cast<Architecture>(arch_tag);
  if (s.vocab == 0 || s.dim == 0 || s.vocab > kMaxDimension || s.dim > kMaxDimension ||
      s.filters > kMaxDimension || s.width > kMaxDimension) {
    throw Error(ErrorCode::kModelFormat, "implausible model dimensions");
  }
  if (arch == Architecture::kAttention ? (s.filters != 0 || s.width != 0)
                                       : (s.filters == 0 || s.width == 0)) {
    throw Error(ErrorCode::kModelFormat, "filter shape does not match architecture");
  }

  Model model = init_model(arch, s.vocab, s.dim, arch == Architecture::kAttention ? 1 : s.filters,
                           arch == Architecture::kAttention ? 1 : s.width, 0);
  std::size_t expected = 0;
  for_each_tensor(model, [&](std::span<const double> t) { expected += t.size(); });
  if (in.remaining() != expected * 8) {
    throw Error(ErrorCode::kModelFormat, "parameter block has the wrong length");
  }
  for_each_tensor(model, [&](std::span<double> t) {
    for (double& v : t) v = in.f64();
  });
  return model;
}

void save_model(const Model& model, const std::filesystem::path& path) {
  const auto image = serialize_model(model);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(image.data()), static_cast<std::streamsize>(image.size()));
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path.string());
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::vector<std::uint8_t> image((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return deserialize_model(image);
}

}  // namespace trustgate::ml
