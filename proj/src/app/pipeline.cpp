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

#include "trustgate/app/pipeline.hpp"

#include <chrono>
#include <condition_variable>
#include <json.hpp>
#include <optional>
#include <thread>

#include "trustgate/app/bounded_queue.hpp"
#include "trustgate/app/corpus_file.hpp"
#include "trustgate/audio/microphone.hpp"
#include "trustgate/driver/secure_driver.hpp"
#include "trustgate/error.hpp"
#include "trustgate/ml/model_io.hpp"
#include "trustgate/pta/bridge.hpp"
#include "trustgate/relay/mock_cloud.hpp"
#include "trustgate/relay/relay.hpp"

namespace trustgate::app {

namespace {

using Clock = std::chrono::steady_clock;

constexpr tee::Address kDriverRegionBase = 0x4000'0000;
constexpr tee::Address kTaHeapBase = 0x5000'0000;
constexpr std::uint64_t kMaxSpeechBytes = 64 * 1024;

std::uint64_t round_up(std::uint64_t v, std::uint64_t to) { return (v + to - 1) / to * to; }

[[noreturn]] void fail_in(std::string_view stage) {
  try {
    throw;
  } catch (const Error& e) {
    throw Error(e.code(), "stage " + std::string(stage) + ": " + e.detail());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kIo, "stage " + std::string(stage) + ": " + e.what());
  }
}

ErrorCode error_for(pta::Status status) {
  switch (status) {
    case pta::Status::kNoData: return ErrorCode::kUnderflow;
    case pta::Status::kAccessDenied: return ErrorCode::kAccessDenied;
    default: return ErrorCode::kMalformedMessage;
  }
}

struct Captured {
  std::size_t index = 0;
  audio::I2sBitstream bits;
  std::string speech;
  Clock::time_point started;
};

struct Ingested {
  std::size_t index = 0;
  std::size_t frames = 0;
  Clock::time_point started;
};

}  // namespace

std::string RunMetrics::to_json() const {
  nlohmann::ordered_json j;
  j["processed"] = processed;
  j["sensitive"] = sensitive;
  j["redacted"] = redacted;
  j["forwarded"] = forwarded;
  j["switches"] = switches;
  j["cost_units"] = cost_units;
  j["bytes_sent"] = bytes_sent;
  j["latency_us"] = latency_us;
  return j.dump(2);
}

std::unique_ptr<ml::Classifier> make_classifier(const PipelineConfig& config) {
  const auto& cc = config.classifier;
  if (cc.architecture == "oracle") {
    return std::make_unique<ml::KeywordOracle>(config.generator.keywords);
  }
  const auto arch = ml::parse_architecture(cc.architecture);
  if (!cc.model_path.empty()) {
    auto model = ml::load_model(cc.model_path);
    if (ml::architecture_of(model) != arch) {
      throw Error(ErrorCode::kConfig, cc.model_path.string() + " holds a " +
                                          std::string(ml::to_string(ml::architecture_of(model))) +
                                          " model, config asks for " + cc.architecture);
    }
    auto vocab_path = cc.vocab_path.empty()
                          ? std::filesystem::path(cc.model_path.string() + ".vocab")
                          : cc.vocab_path;
    return std::make_unique<ml::ModelClassifier>(std::move(model), ml::Vocab::load(vocab_path));
  }
  audio::CorpusGenerator generator(config.generator, config.seed ^ 0x7472'6169'6e00ULL);
  auto corpus = generator.generate(cc.train_utterances);
  auto vocab = vocab_for(corpus);
  auto examples = to_examples(corpus, vocab);
  auto trained = ml::train(arch, examples, vocab.size(), cc.hyperparams);
  return std::make_unique<ml::ModelClassifier>(std::move(trained.model), std::move(vocab));
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  config.validate();
  auto classifier = make_classifier(config);
  return run_pipeline(config, *classifier);
}

PipelineResult run_pipeline(const PipelineConfig& config, const ml::Classifier& classifier,
                            const PipelineHooks& hooks) {
  config.validate();
  PipelineResult result;
  result.truth.resize(config.utterances);
  result.speech.resize(config.utterances);

  // Secure memory layout: driver ring buffers and the TA's receive buffer.
  tee::AddressSpaceController asc;
  const auto driver_region =
      asc.carve_secure_region(kDriverRegionBase, round_up(config.driver_capacity * 4, 4096));
  const auto ta_buffer_size = round_up(
      driver::encoded_size(config.frames_per_utterance, kMaxSpeechBytes), 4096);
  const auto ta_region = asc.carve_secure_region(kTaHeapBase, ta_buffer_size);
  tee::PhysicalMemory memory(asc);
  memory.back(driver_region);
  memory.back(ta_region);
  tee::RegionAllocator driver_alloc(asc, driver_region);
  driver::SecureDriver drv(memory, driver_alloc, config.driver_capacity);

  pta::Bridge bridge(drv, memory);
  bridge.set_replay_sink(hooks.pta_replay);
  const auto session = bridge.open_session();

  std::optional<relay::MockCloud> local_cloud;
  relay::Endpoint endpoint;
  if (config.endpoint.empty()) {
    local_cloud.emplace(relay::Endpoint{"127.0.0.1", 0});
    endpoint = local_cloud->endpoint();
  } else {
    endpoint = relay::parse_endpoint(config.endpoint);
  }
  relay::Supplicant supplicant(
      [endpoint] { return std::make_shared<relay::TcpChannel>(endpoint); });
  relay::Relay relay_module(supplicant);
  tee::WorldContext setup_ctx(tee::WorldId::kSecure, config.cost_per_switch);
  try {
    relay_module.handshake(setup_ctx);
  } catch (...) {
    fail_in("handshake");
  }

  BoundedQueue<Captured> captured(config.queue_depth);
  BoundedQueue<Ingested> ingested(config.queue_depth);
  std::mutex space_mu;
  std::condition_variable space_cv;
  bool aborting = false;
  std::exception_ptr capture_error;
  std::exception_ptr ingest_error;

  std::thread capture_worker([&] {
    try {
      audio::Microphone mic(config.generator, config.seed);
      for (std::size_t i = 0; i < config.utterances; ++i) {
        const auto started = Clock::now();
        auto u = mic.capture(config.frames_per_utterance);
        result.truth[i] = u.truth_label;
        result.speech[i] = u.payload_text;
        Captured item{i, audio::encode_frames(u.frames), std::move(u.payload_text), started};
        if (!captured.push(std::move(item))) break;
      }
    } catch (...) {
      capture_error = std::current_exception();
    }
    captured.close();
  });

  std::thread ingest_worker([&] {
    try {
      while (auto item = captured.pop()) {
        const auto frames = item->bits.size() / (2 * audio::kWordLength);
        {
          // Back-pressure: wait for ring space rather than overrun.
          std::unique_lock lock(space_mu);
          space_cv.wait(lock, [&] {
            return aborting || drv.capacity() - drv.occupancy() >= frames;
          });
          if (aborting) break;
        }
        const auto accepted = drv.ingest(item->bits, item->speech);
        if (accepted != frames) {
          throw Error(ErrorCode::kUnderflow, "driver accepted " + std::to_string(accepted) +
                                                 " of " + std::to_string(frames) + " frames");
        }
        if (!ingested.push({item->index, frames, item->started})) break;
      }
    } catch (...) {
      ingest_error = std::current_exception();
      captured.close();
    }
    ingested.close();
  });

  auto shutdown_workers = [&] {
    {
      std::lock_guard lock(space_mu);
      aborting = true;
    }
    space_cv.notify_all();
    captured.close();
    ingested.close();
    if (capture_worker.joinable()) capture_worker.join();
    if (ingest_worker.joinable()) ingest_worker.join();
  };

  tee::WorldContext ctx(tee::WorldId::kSecure, config.cost_per_switch);
  auto& m = result.metrics;
  std::vector<std::uint8_t> image(ta_buffer_size);
  const char* stage = "pta";
  try {
    while (auto item = ingested.pop()) {
      stage = "pta";
      pta::Command cmd;
      cmd.session = session;
      cmd.cmd_id = pta::kCmdReadAudio;
      cmd.params[0] = pta::MemRefParam{ta_region.value, 0, static_cast<std::uint32_t>(ta_buffer_size)};
      cmd.params[1] = pta::ValueParam{static_cast<std::uint32_t>(item->frames), 0};
      const auto resp = bridge.invoke(cmd, ctx);
      if (resp.status != pta::Status::kOk) {
        throw Error(error_for(resp.status), "read audio: " + std::string(pta::to_string(resp.status)));
      }
      space_cv.notify_all();
      const auto written = std::get<pta::MemRefParam>(resp.params[0]).length;
      memory.load(tee::WorldId::kSecure, asc.region(ta_region).base,
                  std::span(image).first(written));
      const auto block = driver::decode_block(std::span(image).first(written));

      stage = "transcribe";
      const auto transcript = ml::transcribe(block);

      stage = "classify";
      const auto verdict = classifier.classify(transcript, config.policy.threshold);

      stage = "filter";
      const auto outcome = relay::filter(verdict, transcript, config.policy);

      relay::RedactionRecord record{block.sequence, verdict.score, verdict.label,
                                    relay::ActionTaken::kForwarded};
      ++m.processed;
      if (verdict.label == Sensitivity::kSensitive) ++m.sensitive;
      if (!outcome.forward) {
        record.action = relay::ActionTaken::kDropped;
        ++m.redacted;
      } else {
        stage = "relay";
        if ((outcome.flags & relay::kFlagMasked) != 0) record.action = relay::ActionTaken::kMasked;
        const auto sequence = relay_module.next_sequence();
        relay_module.relay_send(outcome.payload, outcome.flags, ctx);
        result.forwarded.push_back({sequence, outcome.flags, outcome.payload});
        ++m.forwarded;
      }
      result.redaction_log.record(record);
      m.latency_us.push_back(static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - item->started)
              .count()));
    }
  } catch (...) {
    shutdown_workers();
    fail_in(stage);
  }
  shutdown_workers();
  if (capture_error) {
    try {
      std::rethrow_exception(capture_error);
    } catch (...) {
      fail_in("capture");
    }
  }
  if (ingest_error) {
    try {
      std::rethrow_exception(ingest_error);
    } catch (...) {
      fail_in("ingest");
    }
  }

  m.switches = ctx.switch_count();
  m.cost_units = ctx.switch_cost_units();
  m.bytes_sent = relay_module.bytes_sent();

  try {
    relay_module.close(setup_ctx);
  } catch (...) {
    fail_in("close");
  }
  bridge.close_session(session);
  result.setup_switches = setup_ctx.switch_count();
  if (local_cloud) {
    local_cloud->stop();
    result.cloud_received = local_cloud->received();
  }
  return result;
}

}  // namespace trustgate::app
