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
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "trustgate/app/config.hpp"
#include "trustgate/ml/classifier.hpp"
#include "trustgate/relay/filter.hpp"
#include "trustgate/relay/wire.hpp"

namespace trustgate::app {

struct RunMetrics {
  std::uint64_t processed = 0;
  std::uint64_t sensitive = 0;  // classifier verdicts, not ground truth
  std::uint64_t redacted = 0;
  std::uint64_t forwarded = 0;
  std::uint64_t switches = 0;
  std::uint64_t cost_units = 0;
  std::uint64_t bytes_sent = 0;
  std::vector<std::uint64_t> latency_us;

  /// Keys: processed, sensitive, redacted, forwarded, switches, cost_units,
  /// bytes_sent, latency_us.
  std::string to_json() const;
};

struct PipelineResult {
  RunMetrics metrics;
  relay::RedactionLog redaction_log;
  std::vector<relay::RelayPacket> forwarded;  // what the relay sent, in order
  /// Ground truth per utterance, kept by the harness for leak checks only.
  std::vector<Sensitivity> truth;
  std::vector<std::string> speech;
  /// Switches spent opening and closing the cloud connection; not part of
  /// the per-utterance accounting in `metrics`.
  std::uint64_t setup_switches = 0;
  /// Packets held by the in-process mock cloud; empty when an external
  /// endpoint was configured.
  std::vector<relay::RelayPacket> cloud_received;
};

struct PipelineHooks {
  std::ostream* pta_replay = nullptr;  // receives one replay line per PTA invoke
};

/// Builds the classifier named by the config: the keyword oracle, a model
/// loaded from disk, or one trained inline on a generated corpus.
std::unique_ptr<ml::Classifier> make_classifier(const PipelineConfig& config);

/// Runs every utterance through capture -> I2S -> secure driver -> PTA ->
/// transcription -> classification -> filter -> relay. Errors abort the run
/// and name the failing stage.
PipelineResult run_pipeline(const PipelineConfig& config, const ml::Classifier& classifier,
                            const PipelineHooks& hooks = {});

PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace trustgate::app
