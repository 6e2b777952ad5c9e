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

#include <filesystem>
#include <vector>

#include "trustgate/audio/microphone.hpp"
#include "trustgate/ml/train.hpp"
#include "trustgate/ml/vocab.hpp"

namespace trustgate::app {

/// Corpus file: one example per line, "label<TAB>text", label being
/// "sensitive" or "benign". Throws kIo / kParse with the line number.
std::vector<audio::LabeledText> read_corpus(const std::filesystem::path& path);
void write_corpus(const std::filesystem::path& path, const std::vector<audio::LabeledText>& corpus);

std::vector<ml::Example> to_examples(const std::vector<audio::LabeledText>& corpus,
                                     const ml::Vocab& vocab);

ml::Vocab vocab_for(const std::vector<audio::LabeledText>& corpus);

}  // namespace trustgate::app
