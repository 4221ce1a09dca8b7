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

// Runs the installed command-line binary as a child process.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Outcome {
  int rc = -1;
  std::string out;
  std::string err;
};

fs::path scratch(const std::string& name) {
  const auto dir = fs::path(GP_BINARY_DIR) / "scratch" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome run(const std::string& args) {
  static int n = 0;
  const auto io = fs::path(GP_BINARY_DIR) / "scratch" / "cli_io";
  fs::create_directories(io);
  const auto out = io / ("out" + std::to_string(n) + ".txt");
  const auto err = io / ("err" + std::to_string(n) + ".txt");
  ++n;
  const std::string cmd = std::string("'") + GP_CLI + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  Outcome o;
  o.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.out = slurp(out);
  o.err = slurp(err);
  return o;
}

// The JSON summary is the trailing object on stdout.
Json summary_of(const std::string& out) {
  const auto at = out.rfind("\n{");
  return Json::parse(at == std::string::npos ? out : out.substr(at + 1));
}

std::string mini_config() { return (fs::path(GP_SOURCE_DIR) / "data/mini/config.json").string(); }

const std::regex kErrorLine("^glosspair: error E_[A-Z_]+: [^\n]+\n$");

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("version and usage") {
    const auto v = run("--version");
    CHECK(v.rc == 0);
    CHECK(v.out == std::string(GP_VERSION) + "\n");
    CHECK(run("").rc == 1);
    CHECK(run("--help").rc == 0);
    CHECK(run("tag --variation v7").rc == 1);
  }

  TEST_CASE("chain through the binary") {
    const auto dir = scratch("cli_chain");
    const std::string common = "--config '" + mini_config() + "' --out-dir '" + dir.string() + "' ";
    for (const char* stage : {"ingest", "pairs", "annotate", "split", "tag", "stats", "baseline", "eval"}) {
      const auto o = run(common + stage);
      INFO(stage << ": " << o.err);
      REQUIRE(o.rc == 0);
      CHECK(o.err.empty());
      CHECK(summary_of(o.out).at("stage") == stage);
    }
    CHECK(fs::exists(dir / "report.txt"));
    const auto eval = run(common + "eval");
    CHECK(eval.out.rfind("            True  False  Accuracy\n", 0) == 0);

    const auto reseeded = run(common + "--seed 99 split");
    REQUIRE(reseeded.rc == 0);
    CHECK(summary_of(reseeded.out).at("seed") == 99);
    const auto v3 = run(common + "tag --variation v3");
    REQUIRE(v3.rc == 0);
    CHECK(fs::exists(dir / "tagged.v3.jsonl"));
  }

  TEST_CASE("failures print one error line") {
    const auto dir = scratch("cli_fail");
    const std::string base = "--out-dir '" + dir.string() + "' ";

    auto o = run(base + "pairs");
    CHECK(o.rc == 2);
    CHECK(std::regex_match(o.err, kErrorLine));
    CHECK(o.err.rfind("glosspair: error E_IO: ", 0) == 0);
    CHECK(o.out.empty());

    o = run(base + "--seed abc split");
    CHECK(o.rc == 1);
    CHECK(o.err.rfind("glosspair: error E_CONFIG: ", 0) == 0);

    o = run("--config /nonexistent/cfg.json ingest");
    CHECK(o.rc == 1);
    CHECK(std::regex_match(o.err, kErrorLine));

    std::ofstream(dir / "preds.jsonl") << "{\"pair_id\": 1}\n";
    std::ofstream(dir / "test.jsonl") << "";
    o = run(base + "eval");
    CHECK(o.rc == 2);
    CHECK(std::regex_match(o.err, kErrorLine));

    o = run("review-serve --annotations '" + (dir / "none.jsonl").string() + "' --port 0");
    CHECK(o.rc == 2);
    CHECK(std::regex_match(o.err, kErrorLine));
  }
}
