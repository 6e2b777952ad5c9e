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

#include "trustgate/app/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <sstream>

#include "trustgate/error.hpp"
#include "trustgate/ml/models.hpp"

namespace trustgate::app {

namespace pt = boost::property_tree;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

void PipelineConfig::validate() const {
  generator.validate();
  try {
    policy.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
  if (utterances == 0) throw Error(ErrorCode::kConfig, "utterance count must be positive");
  if (frames_per_utterance == 0) throw Error(ErrorCode::kConfig, "frames per utterance must be positive");
  if (driver_capacity < frames_per_utterance) {
    throw Error(ErrorCode::kConfig, "driver capacity is smaller than one utterance");
  }
  if (classifier.architecture != "oracle") {
    ml::parse_architecture(classifier.architecture);
    if (!classifier.model_path.empty()) {
      if (!std::filesystem::exists(classifier.model_path)) {
        throw Error(ErrorCode::kConfig, "model file " + classifier.model_path.string() + " does not exist");
      }
      auto vocab = classifier.vocab_path.empty()
                       ? std::filesystem::path(classifier.model_path.string() + ".vocab")
                       : classifier.vocab_path;
      if (!std::filesystem::exists(vocab)) {
        throw Error(ErrorCode::kConfig, "vocabulary file " + vocab.string() + " does not exist");
      }
    } else if (classifier.train_utterances == 0) {
      throw Error(ErrorCode::kConfig, "inline training needs a positive corpus size");
    }
  }
}

namespace {

template <typename T>
T get(const pt::ptree& node, const std::string& key) {
  try {
    return node.get_value<T>();
  } catch (const pt::ptree_error&) {
    throw Error(ErrorCode::kConfig, "invalid value for '" + key + "'");
  }
}

void apply(PipelineConfig& c, const std::string& section, const std::string& key,
           const pt::ptree& v) {
  const auto name = section.empty() ? key : section + "." + key;
  auto& hp = c.classifier.hyperparams;
  if (section.empty()) {
    if (key == "seed") return void(c.seed = get<std::uint64_t>(v, name));
    if (key == "utterances") return void(c.utterances = get<std::size_t>(v, name));
    if (key == "frames_per_utterance") return void(c.frames_per_utterance = get<std::size_t>(v, name));
    if (key == "cost_per_switch") return void(c.cost_per_switch = get<std::uint64_t>(v, name));
    if (key == "driver_capacity") return void(c.driver_capacity = get<std::size_t>(v, name));
    if (key == "queue_depth") return void(c.queue_depth = get<std::size_t>(v, name));
    if (key == "endpoint") return void(c.endpoint = v.data());
  } else if (section == "generator") {
    if (key == "keywords") return void(c.generator.keywords = split_list(v.data()));
    if (key == "sensitivity") return void(c.generator.sensitivity_probability = get<double>(v, name));
    if (key == "vocab_size") return void(c.generator.vocab_size = get<std::size_t>(v, name));
    if (key == "min_words") return void(c.generator.min_words = get<std::size_t>(v, name));
    if (key == "max_words") return void(c.generator.max_words = get<std::size_t>(v, name));
  } else if (section == "classifier") {
    if (key == "architecture") return void(c.classifier.architecture = v.data());
    if (key == "model") return void(c.classifier.model_path = v.data());
    if (key == "vocab") return void(c.classifier.vocab_path = v.data());
    if (key == "train_utterances") return void(c.classifier.train_utterances = get<std::size_t>(v, name));
    if (key == "lr") return void(hp.learning_rate = get<double>(v, name));
    if (key == "epochs") return void(hp.epochs = get<std::size_t>(v, name));
    if (key == "train_seed") return void(hp.seed = get<std::uint64_t>(v, name));
    if (key == "d") return void(hp.dim = get<std::size_t>(v, name));
    if (key == "filters") return void(hp.filters = get<std::size_t>(v, name));
    if (key == "width") return void(hp.width = get<std::size_t>(v, name));
  } else if (section == "policy") {
    if (key == "threshold") return void(c.policy.threshold = get<double>(v, name));
    if (key == "action") return void(c.policy.action = relay::parse_filter_action(v.data()));
    if (key == "mask_token") return void(c.policy.mask_token = v.data());
  }
  throw Error(ErrorCode::kConfig, "unknown setting '" + name + "'");
}

}  // namespace

PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base) {
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::kConfig, path.string() + ": " + e.message() + " (line " +
                                        std::to_string(e.line()) + ")");
  }
  for (const auto& [key, node] : tree) {
    if (node.empty()) {
      apply(base, "", key, node);
    } else {
      for (const auto& [sub, leaf] : node) apply(base, key, sub, leaf);
    }
  }
  return base;
}

namespace {

// Shortest text that parses back to the same double.
std::string num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

std::string render_config(const PipelineConfig& c) {
  const auto& hp = c.classifier.hyperparams;
  std::ostringstream out;
  out << "seed = " << c.seed << '\n'
      << "utterances = " << c.utterances << '\n'
      << "frames_per_utterance = " << c.frames_per_utterance << '\n'
      << "cost_per_switch = " << c.cost_per_switch << '\n'
      << "driver_capacity = " << c.driver_capacity << '\n'
      << "queue_depth = " << c.queue_depth << '\n'
      << "endpoint = " << c.endpoint << "\n\n[generator]\nkeywords = ";
  for (std::size_t i = 0; i < c.generator.keywords.size(); ++i) {
    out << (i ? "," : "") << c.generator.keywords[i];
  }
  out << "\nsensitivity = " << num(c.generator.sensitivity_probability) << '\n'
      << "vocab_size = " << c.generator.vocab_size << '\n'
      << "min_words = " << c.generator.min_words << '\n'
      << "max_words = " << c.generator.max_words << "\n\n[classifier]\n"
      << "architecture = " << c.classifier.architecture << '\n'
      << "model = " << c.classifier.model_path.string() << '\n'
      << "vocab = " << c.classifier.vocab_path.string() << '\n'
      << "train_utterances = " << c.classifier.train_utterances << '\n'
      << "lr = " << num(hp.learning_rate) << '\n'
      << "epochs = " << hp.epochs << '\n'
      << "train_seed = " << hp.seed << '\n'
      << "d = " << hp.dim << '\n'
      << "filters = " << hp.filters << '\n'
      << "width = " << hp.width << "\n\n[policy]\n"
      << "threshold = " << num(c.policy.threshold) << '\n'
      << "action = " << relay::to_string(c.policy.action) << '\n'
      << "mask_token = " << c.policy.mask_token << '\n';
  return out.str();
}

}  // namespace trustgate::app
