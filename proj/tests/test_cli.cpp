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

#include <cstdlib>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "cmsg/pipeline.hpp"
#include "test_support.hpp"

using cmsg::testing::TempDir;
using cmsg::testing::data_dir;

namespace {

int cli(const std::string& args) {
  const std::string cmd = std::string("\"") + CMSG_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("cli exit codes") {
  TempDir dir;
  const auto manifest = data_dir() / "fixtures" / "manifest.txt";
  const auto runs = dir.path() / "runs.jsonl";

  CHECK(cli("") == 1);
  CHECK(cli("batch --manifest " + q(manifest)) == 1);
  CHECK(cli("run --image surfer --tau 3") == 1);
  CHECK(cli("batch --manifest " + q(manifest) + " --out " + q(runs)) == 0);
  CHECK(cli("eval --runs " + q(runs) + " --report " + q(dir.path() / "report.json")) == 0);
  CHECK(cli("batch --manifest " + q(dir.path() / "missing.txt") + " --out " + q(runs)) == 2);
  CHECK(cli("lexicon check --sentiwordnet " + q(data_dir() / "lexicon" / "mini_sentiwordnet.tsv") +
            " --antonyms " + q(data_dir() / "lexicon" / "antonyms.tsv")) == 0);
  CHECK(cli("lexicon check --sentiwordnet " + q(data_dir() / "fixtures" / "malformed" / "score_sum.tsv") +
            " --antonyms " + q(data_dir() / "lexicon" / "antonyms.tsv")) == 2);
  CHECK(cli("run --image surfer --backend http://127.0.0.1:1 --out " + q(dir.path() / "one.jsonl")) == 3);

  const auto bad = dir.write("bad.txt", "nope-1\nnope-2\n");
  CHECK(cli("batch --manifest " + q(bad) + " --out " + q(dir.path() / "bad.jsonl")) == 4);
}

TEST_CASE("cli run writes one record and honours overrides") {
  TempDir dir;
  const auto out = dir.path() / "one.jsonl";
  REQUIRE(cli("run --image bananas --ablation woCS --k_max 8 --out " + q(out)) == 0);
  const auto records = cmsg::read_run_records(out);
  REQUIRE(records.size() == 1);
  CHECK(records[0].ok);
  CHECK(records[0].candidates.size() <= 8);
  for (const auto& c : records[0].candidates) CHECK_FALSE(c.provenance.consequence_used);
}

TEST_CASE("cli config file with flag override") {
  TempDir dir;
  auto cfg = cmsg::PipelineConfig::defaults(data_dir());
  cfg.plan.k_max = 20;
  const auto path = dir.write("cfg.json", cmsg::json(cfg).dump());
  const auto out = dir.path() / "one.jsonl";
  REQUIRE(cli("run --image surfer --config " + q(path) + " --k_max 6 --out " + q(out)) == 0);
  const auto r = cmsg::read_run_records(out).at(0);
  CHECK(r.config.at("k_max") == 6);
  CHECK(r.candidates.size() <= 6);
}
