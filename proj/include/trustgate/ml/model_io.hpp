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
#include <filesystem>
#include <span>
#include <vector>

#include "trustgate/ml/models.hpp"

namespace trustgate::ml {

/// Model file: "TGM1" | arch u32 | V u32 | d u32 | F u32 | w u32, then every
/// parameter as a little-endian f64 in for_each_tensor order. F and w are 0
/// for the attention encoder.
std::vector<std::uint8_t> serialize_model(const Model& model);

/// Throws kModelFormat on a bad magic, unknown architecture, absurd
/// dimensions or a parameter block of the wrong length.
Model deserialize_model(std::span<const std::uint8_t> image);

void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace trustgate::ml
