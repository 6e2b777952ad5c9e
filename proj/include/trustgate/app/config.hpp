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
#include <string>

#include "trustgate/audio/microphone.hpp"
#include "trustgate/ml/train.hpp"
#include "trustgate/relay/filter.hpp"

namespace trustgate::app {

struct ClassifierConfig {
  std::string architecture = "oracle";  // oracle | cnn | attention | hybrid
  std::filesystem::path model_path;     // empty = train inline
  std::filesystem::path vocab_path;     // defaults to <model>.vocab
  std::size_t train_utterances = 800;
  ml::Hyperparams hyperparams;
};

struct PipelineConfig {
  std::uint64_t seed = 42;
  std::size_t utterances = 100;
  std::size_t frames_per_utterance = 160;
  std::uint64_t cost_per_switch = 1;
  std::size_t driver_capacity = 1024;
  std::size_t queue_depth = 8;
  audio::CorpusConfig generator;
  ClassifierConfig classifier;
  relay::FilterPolicy policy;
  std::string endpoint;  // host:port; empty = in-process mock cloud on loopback

  /// Throws kConfig on inconsistent settings or missing model files.
  void validate() const;
};

/// Reads a flat INI-style file (key = value, [section] headers) on top of
/// `base`. Unknown keys are rejected. Throws kConfig / kIo.
PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base = {});

/// The same settings rendered back into the file format.
std::string render_config(const PipelineConfig& config);

std::vector<std::string> split_list(const std::string& text);

}  // namespace trustgate::app
