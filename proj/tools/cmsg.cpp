// Copyright 2026 The cmsg Authors
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

// cmsg: command-line front end for the sarcasm generation engine.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cmsg/eval.hpp"
#include "cmsg/lexicon.hpp"
#include "cmsg/pipeline.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kIo = 2, kBackend = 3, kAllFailed = 4 };

int exit_code_for_kind(const std::string& kind) {
  if (kind == "backend" || kind == "protocol") return kBackend;
  if (kind == "io" || kind == "parse") return kIo;
  if (kind == "invalid_input") return kUsage;
  return kAllFailed;
}

// Flags that override their config-file counterparts.
struct Overrides {
  std::string config_path;
  std::string backend;
  std::string data_dir;
  std::optional<double> tau;
  std::optional<std::size_t> n_cons, t1, t2, k_max, workers;
  std::optional<double> clip_weight;
  std::optional<bool> use_consequence, use_tags, rank_sarcasticness, rank_grammar_and_relation;
  std::optional<std::string> caption_sentiment;
  std::vector<std::string> ablations;

  void attach(CLI::App& app) {
    app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--backend", backend, "backend base URL, or 'fake'");
    app.add_option("--data-dir", data_dir, "bundled data directory");
    app.add_option("--tau", tau, "evaluative negativity threshold")->check(CLI::Range(0.0, 1.0));
    app.add_option("--n_cons", n_cons, "consequences kept per image");
    app.add_option("--t1", t1, "top tags used singly");
    app.add_option("--t2", t2, "top tags used in pairs");
    app.add_option("--k_max", k_max, "maximum candidates per image");
    app.add_option("--clip_weight", clip_weight, "relation score weight");
    app.add_option("--use_consequence", use_consequence);
    app.add_option("--use_tags", use_tags);
    app.add_option("--rank_sarcasticness", rank_sarcasticness);
    app.add_option("--rank_grammar_and_relation", rank_grammar_and_relation);
    app.add_option("--caption_sentiment", caption_sentiment)
        ->check(CLI::IsMember({"positive", "negative", "neutral", "unknown"}));
    app.add_option("--workers", workers, "batch worker threads (0 = all cores)");
    app.add_option("--ablation", ablations, "woCS, woTag, woS, woGI")
        ->check(CLI::IsMember({"woCS", "woTag", "woS", "woGI"}));
  }

  cmsg::PipelineConfig build() const {
    auto config = data_dir.empty() ? cmsg::PipelineConfig::defaults()
                                   : cmsg::PipelineConfig::defaults(data_dir);
    if (!config_path.empty()) {
      auto parsed = cmsg::json::parse(std::ifstream(config_path), nullptr, false);
      if (parsed.is_discarded()) throw cmsg::InvalidInput(config_path + ": not valid JSON");
      cmsg::from_json(parsed, config);
    }
    if (!backend.empty()) config.backend.base_url = backend == "fake" ? "fake:" : backend;
    if (tau) config.tau = *tau;
    if (n_cons) config.plan.n_cons = *n_cons;
    if (t1) config.plan.t1 = *t1;
    if (t2) config.plan.t2 = *t2;
    if (k_max) config.plan.k_max = *k_max;
    if (clip_weight) config.ranker.clip_weight = *clip_weight;
    if (use_consequence) config.plan.use_consequence = *use_consequence;
    if (use_tags) config.plan.use_tags = *use_tags;
    if (rank_sarcasticness) config.ranker.rank_sarcasticness = *rank_sarcasticness;
    if (rank_grammar_and_relation) config.ranker.rank_grammar_and_relation = *rank_grammar_and_relation;
    if (caption_sentiment) config.caption_sentiment = cmsg::parse_sentiment(*caption_sentiment);
    if (workers) config.workers = *workers;
    for (const auto& a : ablations) cmsg::apply_ablation(config, a);
    config.validate();
    return config;
  }
};

void print_summary(const cmsg::RunRecord& r) {
  if (!r.ok) {
    std::cerr << r.image_id << ": failed (" << r.failure_kind << "): " << r.failure_reason << '\n';
    return;
  }
  const auto* sel = r.selected();
  std::cerr << r.image_id << ": " << r.candidates.size() << " candidates, selected #"
            << sel->candidate_id << " (composite " << r.scores[*r.selected_index].composite << ")\n";
}

int cmd_run(const Overrides& o, const std::string& image, const std::string& out) {
  const cmsg::Engine engine(o.build());
  const auto record = engine.run_single(cmsg::resolve_image(image));
  if (out.empty()) {
    std::cout << cmsg::json(record).dump() << '\n';
  } else {
    cmsg::write_run_records(out, {record});
  }
  print_summary(record);
  if (!record.ok) return exit_code_for_kind(record.failure_kind);
  std::cout.flush();
  return kOk;
}

int cmd_batch(const Overrides& o, const std::string& manifest, const std::string& out) {
  const cmsg::Engine engine(o.build());
  const auto records = engine.run_batch(cmsg::read_manifest(manifest));
  cmsg::write_run_records(out, records);
  std::size_t ok = 0;
  for (const auto& r : records) {
    print_summary(r);
    ok += r.ok ? 1 : 0;
  }
  std::cerr << ok << "/" << records.size() << " images succeeded\n";
  return ok == 0 && !records.empty() ? kAllFailed : kOk;
}

int cmd_eval(const std::string& runs, const std::string& report_path) {
  const auto report = cmsg::evaluate(cmsg::read_run_records(runs));
  std::ofstream out(report_path, std::ios::trunc);
  if (!out) throw cmsg::IoError("cannot write " + report_path);
  out << cmsg::json(report).dump(2) << '\n';
  if (!out) throw cmsg::IoError("write failed on " + report_path);
  std::cerr << "images " << report.n_images << ", successful " << report.n_successful
            << ", TL " << report.tl_mean << ", relation " << report.relation_mean.raw << " (x10 "
            << report.relation_mean.scaled << ")\n";
  return report.n_successful == 0 ? kAllFailed : kOk;
}

int cmd_lexicon_check(const std::string& swn, const std::string& antonyms) {
  const auto lex = cmsg::load_lexicon(swn, antonyms);
  std::size_t negative = 0;
  for (const auto& e : lex.entries()) negative += e.neg_score > 0.0 ? 1 : 0;
  std::cout << "entries " << lex.size() << "\nentries_with_negative_score " << negative
            << "\nantonym_rows " << lex.antonym_rows().size() << '\n';
  return kOk;
}

int cmd_serve_fake(const std::string& data_dir, const std::string& host, int port) {
  const auto config = data_dir.empty() ? cmsg::PipelineConfig::defaults()
                                       : cmsg::PipelineConfig::defaults(data_dir);
  cmsg::FakeServer server(cmsg::FakeBackend::load(config.fake));
  std::cerr << "serving fake backend on http://" << host << ":" << port << '\n';
  return server.listen(host, port) ? kOk : kIo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cmsg - cross-modal sarcasm generation engine"};
  app.require_subcommand(1);

  Overrides run_opts;
  std::string run_image, run_out;
  auto* run = app.add_subcommand("run", "generate sarcasm for one image");
  run->add_option("--image", run_image, "image path or fixture id")->required();
  run->add_option("--out", run_out, "write the run record here instead of stdout");
  run_opts.attach(*run);

  Overrides batch_opts;
  std::string manifest, batch_out;
  auto* batch = app.add_subcommand("batch", "run every image of a manifest");
  batch->add_option("--manifest", manifest, "one image path or fixture id per line")->required();
  batch->add_option("--out", batch_out, "JSON-lines output file")->required();
  batch_opts.attach(*batch);

  std::string runs, report;
  auto* eval = app.add_subcommand("eval", "compute TL and mean relation over run records");
  eval->add_option("--runs", runs)->required();
  eval->add_option("--report", report)->required();

  std::string swn, antonyms;
  auto* lexicon = app.add_subcommand("lexicon", "lexicon utilities");
  lexicon->require_subcommand(1);
  auto* check = lexicon->add_subcommand("check", "parse and summarize lexicon files");
  check->add_option("--sentiwordnet", swn)->required();
  check->add_option("--antonyms", antonyms)->required();

  std::string serve_data, serve_host = "127.0.0.1";
  int serve_port = 8080;
  auto* serve = app.add_subcommand("serve-fake", "serve the deterministic fake backend over HTTP");
  serve->add_option("--data-dir", serve_data);
  serve->add_option("--host", serve_host);
  serve->add_option("--port", serve_port);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(run_opts, run_image, run_out);
    if (*batch) return cmd_batch(batch_opts, manifest, batch_out);
    if (*eval) return cmd_eval(runs, report);
    if (*check) return cmd_lexicon_check(swn, antonyms);
    if (*serve) return cmd_serve_fake(serve_data, serve_host, serve_port);
  } catch (const cmsg::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const cmsg::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const cmsg::BackendError& e) {
    std::cerr << "backend error: " << e.what() << '\n';
    return kBackend;
  } catch (const cmsg::ProtocolError& e) {
    std::cerr << "backend error: " << e.what() << '\n';
    return kBackend;
  } catch (const cmsg::InvalidInput& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const cmsg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAllFailed;
  }
  return kUsage;
}
