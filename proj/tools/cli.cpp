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

#include "cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "trustgate/app/config.hpp"
#include "trustgate/app/corpus_file.hpp"
#include "trustgate/app/pipeline.hpp"
#include "trustgate/error.hpp"
#include "trustgate/ml/model_io.hpp"
#include "trustgate/relay/mock_cloud.hpp"
#include "trustgate/trace/trace.hpp"

namespace trustgate::cli {

namespace {

namespace fs = std::filesystem;

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted.store(true); }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path.string());
}

void require_file(const fs::path& path, std::string_view what) {
  if (!fs::is_regular_file(path)) {
    throw Error(ErrorCode::kIo, std::string(what) + " " + path.string() + " does not exist");
  }
}

// Applies `value` to `target` only when the flag was given on the command line.
template <typename T>
void override_with(const CLI::Option* opt, T& target, const T& value) {
  if (opt->count() > 0) target = value;
}

std::string payload_dump(const std::vector<relay::RelayPacket>& packets) {
  std::string out;
  for (const auto& p : packets) {
    out += p.payload;
    out += '\n';
  }
  return out;
}

struct PipelineArgs {
  std::string config_path;
  std::string metrics_out;
  std::string redaction_log;
  std::string forward_log;
  std::string pta_replay;

  app::PipelineConfig flags;
  std::string keywords;
  std::string action;

  std::function<void(app::PipelineConfig&)> apply;
};

void add_pipeline(CLI::App& app, PipelineArgs& a, std::function<int()>& action, std::ostream& out) {
  auto* cmd = app.add_subcommand("pipeline", "Run the capture-to-cloud pipeline");
  auto& f = a.flags;
  cmd->add_option("--config", a.config_path, "INI config file; flags override it");
  auto* seed = cmd->add_option("--seed", f.seed, "RNG seed");
  auto* utt = cmd->add_option("--utterances", f.utterances, "Utterances to generate");
  auto* frames = cmd->add_option("--frames", f.frames_per_utterance, "Frames per utterance");
  auto* cost = cmd->add_option("--cost-per-switch", f.cost_per_switch, "Cost units per world switch");
  auto* cap = cmd->add_option("--capacity", f.driver_capacity, "Driver ring capacity in frames");
  auto* depth = cmd->add_option("--queue-depth", f.queue_depth, "Bounded queue depth");
  auto* kw = cmd->add_option("--keywords", a.keywords, "Comma-separated sensitive keywords");
  auto* sens = cmd->add_option("--sensitivity", f.generator.sensitivity_probability,
                               "Probability an utterance is sensitive");
  auto* arch = cmd->add_option("--classifier", f.classifier.architecture,
                               "oracle | cnn | attention | hybrid");
  auto* model = cmd->add_option("--model", f.classifier.model_path, "Trained model file");
  auto* vocab = cmd->add_option("--vocab", f.classifier.vocab_path, "Vocabulary file");
  auto* train_n = cmd->add_option("--train-utterances", f.classifier.train_utterances,
                                  "Corpus size for inline training");
  auto* epochs = cmd->add_option("--epochs", f.classifier.hyperparams.epochs, "Inline training epochs");
  auto* lr = cmd->add_option("--lr", f.classifier.hyperparams.learning_rate, "Inline learning rate");
  auto* thr = cmd->add_option("--threshold", f.policy.threshold, "Sensitivity threshold in (0,1)");
  auto* act = cmd->add_option("--action", a.action, "drop | mask");
  auto* mask = cmd->add_option("--mask-token", f.policy.mask_token, "Replacement token for mask");
  auto* ep = cmd->add_option("--endpoint", f.endpoint, "Cloud host:port; default runs a loopback mock");
  cmd->add_option("--metrics-out", a.metrics_out, "Write metrics JSON here");
  cmd->add_option("--redaction-log", a.redaction_log, "Write the redaction log here");
  cmd->add_option("--forward-log", a.forward_log, "Write forwarded payloads, one per line");
  cmd->add_option("--pta-replay", a.pta_replay, "Write PTA command/response replay lines");

  a.apply = [=, &a](app::PipelineConfig& c) {
    const auto& f = a.flags;
    override_with(seed, c.seed, f.seed);
    override_with(utt, c.utterances, f.utterances);
    override_with(frames, c.frames_per_utterance, f.frames_per_utterance);
    override_with(cost, c.cost_per_switch, f.cost_per_switch);
    override_with(cap, c.driver_capacity, f.driver_capacity);
    override_with(depth, c.queue_depth, f.queue_depth);
    if (kw->count() > 0) c.generator.keywords = app::split_list(a.keywords);
    override_with(sens, c.generator.sensitivity_probability, f.generator.sensitivity_probability);
    override_with(arch, c.classifier.architecture, f.classifier.architecture);
    override_with(model, c.classifier.model_path, f.classifier.model_path);
    override_with(vocab, c.classifier.vocab_path, f.classifier.vocab_path);
    override_with(train_n, c.classifier.train_utterances, f.classifier.train_utterances);
    override_with(epochs, c.classifier.hyperparams.epochs, f.classifier.hyperparams.epochs);
    override_with(lr, c.classifier.hyperparams.learning_rate, f.classifier.hyperparams.learning_rate);
    override_with(thr, c.policy.threshold, f.policy.threshold);
    if (act->count() > 0) c.policy.action = relay::parse_filter_action(a.action);
    override_with(mask, c.policy.mask_token, f.policy.mask_token);
    override_with(ep, c.endpoint, f.endpoint);
  };

  cmd->callback([&a, &action, &out] {
    action = [&a, &out]() -> int {
      app::PipelineConfig config;
      if (!a.config_path.empty()) {
        require_file(a.config_path, "config file");
        config = app::load_config(a.config_path);
      }
      a.apply(config);
      config.validate();

      std::ofstream replay;
      app::PipelineHooks hooks;
      if (!a.pta_replay.empty()) {
        replay.open(a.pta_replay);
        if (!replay) throw Error(ErrorCode::kIo, "cannot write " + a.pta_replay);
        hooks.pta_replay = &replay;
      }
      auto classifier = app::make_classifier(config);
      const auto result = app::run_pipeline(config, *classifier, hooks);
      const auto& m = result.metrics;
      if (!a.metrics_out.empty()) write_file(a.metrics_out, m.to_json() + "\n");
      if (!a.redaction_log.empty()) write_file(a.redaction_log, result.redaction_log.format());
      if (!a.forward_log.empty()) write_file(a.forward_log, payload_dump(result.forwarded));
      out << "processed=" << m.processed << " sensitive=" << m.sensitive
          << " redacted=" << m.redacted << " forwarded=" << m.forwarded
          << " switches=" << m.switches << " cost_units=" << m.cost_units
          << " bytes_sent=" << m.bytes_sent << std::endl;
      return 0;
    };
  });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"TrustGate: secure-world audio redaction pipeline"};
  app.require_subcommand(1);
  std::function<int()> action;

  PipelineArgs pipeline;
  add_pipeline(app, pipeline, action, out);

  // train
  std::string corpus_path;
  std::string arch_name = "cnn";
  std::string model_out;
  std::string loss_out;
  ml::Hyperparams hp;
  auto* train = app.add_subcommand("train", "Train a classifier on a labelled corpus");
  train->add_option("--corpus", corpus_path, "Corpus file, one 'label<TAB>text' per line")->required();
  train->add_option("--arch", arch_name, "cnn | attention | hybrid");
  train->add_option("--out", model_out, "Model output file; vocabulary goes to <out>.vocab")->required();
  train->add_option("--loss-history", loss_out, "Loss history output (default <out>.loss)");
  train->add_option("--lr", hp.learning_rate, "Learning rate");
  train->add_option("--epochs", hp.epochs, "Full-batch epochs");
  train->add_option("--seed", hp.seed, "Initialisation seed");
  train->add_option("--dim", hp.dim, "Embedding dimension");
  train->add_option("--filters", hp.filters, "Convolution filters");
  train->add_option("--width", hp.width, "Convolution width");
  train->callback([&] {
    action = [&]() -> int {
      require_file(corpus_path, "corpus file");
      const auto arch = ml::parse_architecture(arch_name);
      const auto corpus = app::read_corpus(corpus_path);
      const auto vocab = app::vocab_for(corpus);
      const auto examples = app::to_examples(corpus, vocab);
      const auto trained = ml::train(arch, examples, vocab.size(), hp);
      ml::save_model(trained.model, model_out);
      vocab.save(model_out + ".vocab");
      std::string history;
      char line[64];
      for (std::size_t i = 0; i < trained.loss_history.size(); ++i) {
        std::snprintf(line, sizeof line, "%zu %.9g\n", i, trained.loss_history[i]);
        history += line;
      }
      write_file(loss_out.empty() ? model_out + ".loss" : loss_out, history);
      char summary[96];
      std::snprintf(summary, sizeof summary, "train accuracy: %.4f (%zu examples)\n",
                    ml::accuracy(trained.model, examples), examples.size());
      out << summary;
      return 0;
    };
  });

  // trace
  std::vector<std::string> trace_paths;
  std::string inventory_path;
  std::vector<std::string> tasks;
  std::string report_out;
  std::string header_out;
  auto* tr = app.add_subcommand("trace", "Derive the minimal driver function set from traces");
  tr->add_option("--trace", trace_paths, "Trace log file(s)")->required();
  tr->add_option("--inventory", inventory_path, "Driver function inventory, one per line")->required();
  tr->add_option("--task", tasks, "Task(s) to keep; default all traced tasks");
  tr->add_option("--out", report_out, "Report output file; default stdout");
  tr->add_option("--header", header_out, "Also write a C header of exclusion directives");
  tr->callback([&] {
    action = [&]() -> int {
      require_file(inventory_path, "inventory file");
      std::vector<trace::TraceEvent> events;
      for (const auto& p : trace_paths) {
        require_file(p, "trace file");
        try {
          auto parsed = trace::parse_trace(read_file(p));
          events.insert(events.end(), parsed.begin(), parsed.end());
        } catch (const Error& e) {
          throw Error(e.code(), p + ": " + e.detail());
        }
      }
      const auto graphs = trace::build_callgraphs(events);
      auto selected = tasks;
      if (selected.empty()) {
        for (const auto& [task, graph] : graphs) selected.push_back(task);
      }
      const auto inventory = trace::parse_inventory(read_file(inventory_path));
      const auto report = trace::emit_report(inventory, trace::minimal_set(graphs, selected));
      if (report_out.empty()) {
        out << report.format();
      } else {
        write_file(report_out, report.format());
      }
      if (!header_out.empty()) write_file(header_out, report.format_header());
      return 0;
    };
  });

  // serve
  std::string bind = "127.0.0.1:7878";
  std::string dump_path;
  std::size_t exit_after = 0;
  auto* serve = app.add_subcommand("serve", "Run the mock cloud until interrupted");
  serve->add_option("--bind", bind, "host:port to listen on (port 0 = ephemeral)");
  serve->add_option("--dump", dump_path, "Write received payloads here, one per line");
  serve->add_option("--exit-after", exit_after, "Stop after this many packets (0 = never)");
  serve->callback([&] {
    action = [&]() -> int {
      relay::MockCloud cloud(relay::parse_endpoint(bind));
      out << "listening on " << cloud.endpoint().to_string() << std::endl;
      g_interrupted.store(false);
      auto old_int = std::signal(SIGINT, on_signal);
      auto old_term = std::signal(SIGTERM, on_signal);
      while (!g_interrupted.load() && (exit_after == 0 || cloud.received_count() < exit_after)) {
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
      }
      std::signal(SIGINT, old_int);
      std::signal(SIGTERM, old_term);
      cloud.stop();
      const auto packets = cloud.received();
      if (!dump_path.empty()) write_file(dump_path, payload_dump(packets));
      std::uint64_t bytes = 0;
      for (const auto& p : packets) bytes += p.payload.size();
      out << "received " << packets.size() << " payloads (" << bytes << " bytes), "
          << cloud.nak_count() << " rejected" << std::endl;
      return 0;
    };
  });

  // corpus
  std::size_t count = 1000;
  std::uint64_t corpus_seed = 7;
  std::string corpus_out;
  audio::CorpusConfig gen;
  std::string gen_keywords;
  auto* corpus = app.add_subcommand("corpus", "Generate a labelled synthetic corpus");
  corpus->add_option("--count", count, "Number of utterances");
  corpus->add_option("--seed", corpus_seed, "RNG seed");
  corpus->add_option("--sensitivity", gen.sensitivity_probability, "Probability of a sensitive line");
  auto* gen_kw = corpus->add_option("--keywords", gen_keywords, "Comma-separated sensitive keywords");
  corpus->add_option("--out", corpus_out, "Output file")->required();
  corpus->callback([&] {
    action = [&]() -> int {
      if (gen_kw->count() > 0) gen.keywords = app::split_list(gen_keywords);
      gen.validate();
      audio::CorpusGenerator generator(gen, corpus_seed);
      app::write_corpus(corpus_out, generator.generate(count));
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  try {
    return action ? action() : 1;
  } catch (const std::exception& e) {
    err << "trustgate: " << e.what() << std::endl;
    return 1;
  }
}

}  // namespace trustgate::cli
