// Copyright 2026 The glosspair Authors
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

// glosspair command line. Exit codes: 0 success, 1 usage or configuration
// error, 2 data error. Failures print one line to stderr:
//   glosspair: error <CODE>: <message>

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "glosspair/glosspair.h"
#include "json.hpp"
#include "review_server.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

int exit_code_for(gp_status st) {
  switch (st) {
    case GP_OK: return 0;
    case GP_ERR_CONFIG:
    case GP_ERR_INVALID_ARGUMENT: return kExitUsage;
    default: return kExitData;
  }
}

int fail(gp_status st, std::string message) {
  for (char& c : message) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  std::cerr << "glosspair: error " << gp_status_name(st) << ": " << message << "\n";
  return exit_code_for(st);
}

struct Pipeline {
  gp_pipeline* p = nullptr;
  Pipeline() { gp_pipeline_create(&p); }
  ~Pipeline() { gp_pipeline_destroy(p); }
};

// Values given on the command line; unset ones leave the config untouched.
// A map keeps the references handed to CLI11 stable.
struct Overrides {
  std::map<std::string, std::optional<std::string>> values;

  std::optional<std::string>& slot(const std::string& key) { return values[key]; }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build context-gloss pair datasets from lexicon dumps and score predictions."};
  app.set_version_flag("--version", std::string(gp_version()));
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  Overrides ov;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out-dir", ov.slot("out_dir"), "artifact directory");
  app.add_option("--seed", ov.slot("seed"), "split seed");
  app.add_option("--variation", ov.slot("variation"), "signal variation")->check(CLI::IsMember({"v1", "v2", "v3", "v4"}));
  app.add_option("--profile", ov.slot("profile"), "normalization profile")->check(CLI::IsMember({"none", "camel"}));
  app.add_option("--max-len", ov.slot("max_len"), "token budget per instance");

  auto* ingest = app.add_subcommand("ingest", "parse the dump into sense records");
  ingest->add_option("--dump", ov.slot("dump"), "lexicon dump (TSV)");
  ingest->add_option("--specs", ov.slot("specs"), "parser specs (YAML)");
  ingest->add_option("--lexicon-rank", ov.slot("lexicon_rank"), "comma-separated tie-break order");

  auto* pairs = app.add_subcommand("pairs", "build True and False pairs");
  pairs->add_option("--input", ov.slot("input"));
  pairs->add_option("--output", ov.slot("output"));

  auto* annotate = app.add_subcommand("annotate", "locate target words");
  annotate->add_option("--input", ov.slot("input"));
  annotate->add_option("--output", ov.slot("output"));
  annotate->add_option("--lemma-table", ov.slot("lemma_table"), "surface<TAB>lemma table");

  std::string annotations, host = "127.0.0.1", ui_dir;
  int port = 8080;
  auto* serve = app.add_subcommand("review-serve", "serve the review API");
  serve->add_option("--annotations", annotations, "annotations.jsonl (default: <out-dir>/annotations.jsonl)");
  serve->add_option("--host", host);
  serve->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve->add_option("--ui-dir", ui_dir, "static review UI assets");

  auto* tag = app.add_subcommand("tag", "render tagged instances");
  tag->add_option("--input", ov.slot("input"), "pairs file (default: pairs.jsonl)");
  tag->add_option("--output", ov.slot("output"));
  tag->add_option("--profile-file", ov.slot("profile_file"), "custom normalization rule table");

  auto* split = app.add_subcommand("split", "leakage-free train/test split");
  split->add_option("--input", ov.slot("input"));

  auto* stats = app.add_subcommand("stats", "dataset statistics");
  stats->add_option("--input", ov.slot("input"), "senses file");

  auto* baseline = app.add_subcommand("baseline", "word-overlap baseline predictions");
  baseline->add_option("--input", ov.slot("input"), "gold pairs (default: test.jsonl)");
  baseline->add_option("--output", ov.slot("output"));
  baseline->add_option("--threshold", ov.slot("threshold"));

  auto* eval = app.add_subcommand("eval", "score predictions");
  eval->add_option("--gold", ov.slot("gold"));
  eval->add_option("--preds", ov.slot("preds"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  Pipeline pipe;
  if (pipe.p == nullptr) return fail(GP_ERR_INTERNAL, "cannot allocate pipeline");
  if (!config_path.empty()) {
    if (const gp_status st = gp_pipeline_load_config(pipe.p, config_path.c_str()); st != GP_OK) {
      return fail(st, gp_last_error());
    }
  }
  for (const auto& [key, value] : ov.values) {
    if (!value) continue;
    if (const gp_status st = gp_pipeline_set(pipe.p, key.c_str(), value->c_str()); st != GP_OK) {
      return fail(st, gp_last_error());
    }
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub == serve) {
    if (annotations.empty()) {
      char* cfg = nullptr;
      gp_pipeline_config_json(pipe.p, &cfg);
      const auto j = nlohmann::json::parse(cfg);
      gp_string_free(cfg);
      annotations = (std::filesystem::path(j.at("out_dir").get<std::string>()) / "annotations.jsonl").string();
    }
    try {
      glosspair::review::ReviewServer server({annotations, host, port, ui_dir});
      const int bound = server.bind();
      std::cout << "review API listening on http://" << host << ":" << bound << "/api/queue" << std::endl;
      server.serve();
    } catch (const glosspair::review::ServerError& e) {
      return fail(e.status(), e.what());
    }
    return 0;
  }

  char* summary = nullptr;
  const gp_status st = gp_run_stage(pipe.p, sub->get_name().c_str(), &summary);
  if (st != GP_OK) return fail(st, gp_last_error());
  auto j = nlohmann::ordered_json::parse(summary);
  gp_string_free(summary);
  // Human-readable tables go to stdout as text; the rest as JSON.
  if (j.contains("text")) {
    std::cout << j["text"].get<std::string>();
    j.erase("text");
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}
