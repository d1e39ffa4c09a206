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

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "cmsg/errors.hpp"
#include "cmsg/eval.hpp"
#include "cmsg/pipeline.hpp"
#include "cmsg/text.hpp"
#include "test_support.hpp"

using namespace cmsg;
using cmsg::testing::TempDir;
using cmsg::testing::data_dir;
using cmsg::testing::test_config;

namespace {

ImageRecord fixture(const std::string& id) { return resolve_image(id); }

std::vector<std::string> manifest() { return read_manifest(data_dir() / "fixtures" / "manifest.txt"); }

std::vector<std::string> file_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

RunRecord record_with(const std::string& text, double relation) {
  RunRecord r;
  r.ok = true;
  CandidateText c;
  c.full_text = text;
  r.candidates = {c};
  ScoreBreakdown s;
  s.relation = relation;
  r.scores = {s};
  r.selected_index = 0;
  return r;
}

std::string words(std::size_t n) {
  std::vector<std::string> w(n, "w");
  return text::join(w, " ");
}

}  // namespace

TEST_CASE("bananas end to end") {
  const Engine engine(test_config());
  const auto r = engine.run_single(fixture("bananas"));
  REQUIRE_MESSAGE(r.ok, r.failure_reason);
  CHECK(r.first_sentence == "a bunch of beautiful green bananas hanging from a tree");
  const auto* sel = r.selected();
  REQUIRE(sel != nullptr);
  CHECK(sel->full_text.rfind(r.first_sentence + " ", 0) == 0);
  CHECK(cmsg::testing::has_phrase(sel->full_text, "bananas"));
  CHECK(r.selected_relation.has_value());
  CHECK(std::any_of(r.consequences.begin(), r.consequences.end(),
                    [](auto& c) { return c.phrase == "fall down"; }));
  CHECK(r.config_fingerprint == engine.config().fingerprint());
  CHECK(r.candidates.size() == r.scores.size());
}

TEST_CASE("woCS leaves consequences out of every candidate") {
  auto cfg = test_config();
  apply_ablation(cfg, "woCS");
  const auto r = Engine(cfg).run_single(fixture("bananas"));
  REQUIRE(r.ok);
  CHECK(r.consequences.empty());
  for (const auto& c : r.candidates) CHECK_FALSE(c.provenance.consequence_used);
}

TEST_CASE("woTag leaves tags out of every candidate") {
  auto cfg = test_config();
  apply_ablation(cfg, "woTag");
  const auto r = Engine(cfg).run_single(fixture("surfer"));
  REQUIRE(r.ok);
  for (const auto& c : r.candidates) CHECK(c.provenance.tags_used.empty());
}

TEST_CASE("woS with woGI selects the first candidate") {
  auto cfg = test_config();
  apply_ablation(cfg, "woS");
  apply_ablation(cfg, "woGI");
  const auto r = Engine(cfg).run_single(fixture("rainy_city"));
  REQUIRE(r.ok);
  CHECK(r.selected_index == 0u);
  for (const auto& s : r.scores) {
    CHECK(s.composite == 1.0);
    CHECK(s.relation == 1.0);
    CHECK(s.sarcasticness == 1.0);
    CHECK(s.grammaticality == 1.0);
  }
  REQUIRE(r.selected_relation.has_value());
  CHECK(*r.selected_relation >= 0.0);
  CHECK(*r.selected_relation <= 2.5);
}

TEST_CASE("ablations cannot disable both plan sources") {
  auto cfg = test_config();
  apply_ablation(cfg, "woCS");
  apply_ablation(cfg, "woTag");
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
  CHECK_THROWS_AS(apply_ablation(cfg, "woX"), InvalidInput);
}

TEST_CASE("image without consequence rule falls back to tags") {
  const auto r = Engine(test_config()).run_single(fixture("old_bicycle"));
  REQUIRE(r.ok);
  CHECK(r.consequence_fallback);
  CHECK_FALSE(r.candidates.empty());
  for (const auto& c : r.candidates) CHECK_FALSE(c.provenance.consequence_used);
}

TEST_CASE("unknown image becomes a failure record") {
  const auto r = Engine(test_config()).run_single(fixture("does_not_exist"));
  CHECK_FALSE(r.ok);
  CHECK(r.failure_kind == "backend");
  CHECK_FALSE(r.selected_index.has_value());
}

TEST_CASE("batch round trips through jsonl") {
  TempDir dir;
  const Engine engine(test_config());
  const auto records = engine.run_batch(manifest());
  REQUIRE(records.size() == 10);
  const auto out = dir.path() / "runs.jsonl";
  write_run_records(out, records);
  CHECK(file_lines(out).size() == 10);
  const auto back = read_run_records(out);
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(json(back[i]).dump() == json(records[i]).dump());
    CHECK(back[i].image_id == manifest()[i]);
  }
}

TEST_CASE("corrupt manifest entry is isolated") {
  auto m = manifest();
  REQUIRE(m.size() == 10);
  m[4] = "corrupt/../entry-that-does-not-exist.png";
  const auto records = Engine(test_config()).run_batch(m);
  REQUIRE(records.size() == 10);
  std::size_t failed = 0;
  for (const auto& r : records) failed += r.ok ? 0 : 1;
  CHECK(failed == 1);
  CHECK_FALSE(records[4].ok);
  CHECK_FALSE(records[4].failure_reason.empty());
}

TEST_CASE("batch output is deterministic modulo timestamps") {
  TempDir dir;
  auto cfg = test_config();
  const auto a = dir.path() / "a.jsonl";
  const auto b = dir.path() / "b.jsonl";
  write_run_records(a, Engine(cfg).run_batch(manifest()));
  cfg.workers = 1;
  write_run_records(b, Engine(cfg).run_batch(manifest()));
  const auto la = file_lines(a), lb = file_lines(b);
  REQUIRE(la.size() == lb.size());
  for (std::size_t i = 0; i < la.size(); ++i) {
    // worker count is part of the config, so drop it before comparing
    auto ja = json::parse(strip_timestamps(la[i]));
    auto jb = json::parse(strip_timestamps(lb[i]));
    for (auto* j : {&ja, &jb}) {
      j->erase("config");
      j->erase("config_fingerprint");
    }
    CHECK(ja.dump() == jb.dump());
  }
}

TEST_CASE("stored scores reproduce the selection") {
  for (const auto& r : Engine(test_config()).run_batch(manifest())) {
    REQUIRE(r.ok);
    const auto again = rank_candidates(r.candidates, r.scores);
    CHECK(again.selected == *r.selected_index);
    CHECK(again.order == r.ranking);
    PipelineConfig stored = r.config.get<PipelineConfig>();
    CHECK(stored.fingerprint() == r.config_fingerprint);
  }
}

TEST_CASE("config json round trip and validation") {
  auto cfg = test_config();
  cfg.tau = 0.3;
  cfg.plan.k_max = 12;
  cfg.ranker.rank_sarcasticness = false;
  const json j = cfg;
  const auto back = j.get<PipelineConfig>();
  CHECK(json(back) == j);
  CHECK(back.fingerprint() == cfg.fingerprint());
  CHECK(cfg.fingerprint().size() == 16);

  json bad = j;
  bad["tua"] = 0.5;
  CHECK_THROWS_AS(bad.get<PipelineConfig>(), InvalidInput);
  auto out_of_range = cfg;
  out_of_range.tau = 1.5;
  CHECK_THROWS_AS(out_of_range.validate(), InvalidInput);
}

TEST_CASE("manifest reading") {
  TempDir dir;
  const auto p = dir.write("m.txt", "# comment\nsurfer\n\n  bananas  \n");
  CHECK(read_manifest(p) == std::vector<std::string>{"surfer", "bananas"});
  CHECK_THROWS_AS(read_manifest(dir.path() / "missing.txt"), IoError);
  CHECK_THROWS_AS(write_run_records("/nonexistent-dir/x.jsonl", {}), IoError);
}

TEST_CASE("timestamps are the only stripped field") {
  RunRecord r = record_with("a b", 1.0);
  r.started_at = "2026-01-01T00:00:00Z";
  r.finished_at = "2026-01-01T00:00:01Z";
  auto stripped = json::parse(strip_timestamps(json(r).dump()));
  CHECK_FALSE(stripped.contains("timestamps"));
  auto full = json(r);
  full.erase("timestamps");
  CHECK(stripped == full);
}

TEST_CASE("total length") {
  CHECK(compute_tl({record_with(words(10), 1.0), record_with(words(20), 1.0)}) == 15.0);
  RunRecord failed;
  CHECK(compute_tl({record_with(words(7), 1.0), failed}) == 7.0);
  CHECK_THROWS_AS(compute_tl({}), InvalidInput);
  CHECK_THROWS_AS(compute_tl({failed}), InvalidInput);
  CHECK(compute_tl({record_with("  spaced \t out\nwords ", 0.0)}) == 3.0);
}

TEST_CASE("relation mean") {
  auto m = compute_relation_mean({record_with("a", 1.0), record_with("b", 2.0)});
  CHECK(m.raw == 1.5);
  CHECK(m.scaled == 15.0);
  auto one = compute_relation_mean({record_with("a", 2.531)});
  CHECK(one.scaled == doctest::Approx(25.31).epsilon(1e-12));
  CHECK_THROWS_AS(compute_relation_mean({}), InvalidInput);

  auto masked = record_with("a", 1.0);
  masked.scores[0].factor_mask.relation = false;
  CHECK_THROWS_AS(compute_relation_mean({masked}), InvalidInput);
  masked.selected_relation = 0.75;
  CHECK(compute_relation_mean({masked}).raw == 0.75);
}

TEST_CASE("eval report") {
  RunRecord failed;
  failed.image_id = "x";
  failed.failure_reason = "boom";
  auto report = evaluate({record_with(words(4), 2.0), failed});
  CHECK(report.n_images == 2);
  CHECK(report.n_successful == 1);
  CHECK(report.tl_mean == 4.0);
  CHECK(report.relation_mean.scaled == 20.0);
  const json j = report;
  CHECK(j.at("rows").size() == 2);
  CHECK(j.at("relation_mean_x10") == 20.0);
}
