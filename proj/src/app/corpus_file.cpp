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

#include "trustgate/app/corpus_file.hpp"

#include <fstream>

#include "trustgate/error.hpp"

namespace trustgate::app {

std::vector<audio::LabeledText> read_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read corpus " + path.string());
  std::vector<audio::LabeledText> out;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kParse, path.string() + ":" + std::to_string(line_no) + ": missing tab");
    }
    auto label = line.substr(0, tab);
    audio::LabeledText ex;
    if (label == "sensitive") {
      ex.label = Sensitivity::kSensitive;
    } else if (label == "benign") {
      ex.label = Sensitivity::kBenign;
    } else {
      throw Error(ErrorCode::kParse, path.string() + ":" + std::to_string(line_no) +
                                         ": unknown label '" + label + "'");
    }
    ex.text = line.substr(tab + 1);
    out.push_back(std::move(ex));
  }
  return out;
}

void write_corpus(const std::filesystem::path& path, const std::vector<audio::LabeledText>& corpus) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write corpus " + path.string());
  for (const auto& ex : corpus) out << to_string(ex.label) << '\t' << ex.text << '\n';
}

std::vector<ml::Example> to_examples(const std::vector<audio::LabeledText>& corpus,
                                     const ml::Vocab& vocab) {
  std::vector<ml::Example> out;
  out.reserve(corpus.size());
  for (const auto& ex : corpus) out.push_back({ml::tokenize(ex.text, vocab), ex.label});
  return out;
}

ml::Vocab vocab_for(const std::vector<audio::LabeledText>& corpus) {
  std::vector<std::string> texts;
  texts.reserve(corpus.size());
  for (const auto& ex : corpus) texts.push_back(ex.text);
  return ml::Vocab::build(texts);
}

}  // namespace trustgate::app
