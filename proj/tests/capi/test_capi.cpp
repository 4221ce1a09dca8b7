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

// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <string>
#include <thread>

#include "doctest.h"
#include "glosspair/glosspair.h"
#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::path(GP_BINARY_DIR) / "scratch" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Takes ownership of a library string.
std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  gp_string_free(s);
  return out;
}

fs::path review_copy(const std::string& name) {
  const auto dir = scratch(name);
  fs::copy_file(fs::path(GP_SOURCE_DIR) / "tests/fixtures/review/annotations.jsonl", dir / "annotations.jsonl");
  return dir / "annotations.jsonl";
}

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("status names and version") {
    CHECK(std::string(gp_status_name(GP_OK)) == "OK");
    CHECK(std::string(gp_status_name(GP_ERR_CONFIG)) == "E_CONFIG");
    CHECK(std::string(gp_status_name(GP_ERR_CONFLICT)) == "E_CONFLICT");
    CHECK(gp_status_name(static_cast<gp_status>(99)) != nullptr);
    CHECK(std::string(gp_version()) == GP_VERSION);
  }

  TEST_CASE("text utilities") {
    char* out = nullptr;
    REQUIRE(gp_undiacritize("كَتَبَ", &out) == GP_OK);
    CHECK(take(out) == "كتب");
    REQUIRE(gp_normalize("أحمد", "camel", &out) == GP_OK);
    CHECK(take(out) == "احمد");
    CHECK(gp_normalize("x", "nonesuch", &out) == GP_ERR_CONFIG);
    CHECK(std::string(gp_last_error()).find("nonesuch") != std::string::npos);

    size_t d = 0;
    REQUIRE(gp_levenshtein("كتاب", "كتب", &d) == GP_OK);
    CHECK(d == 1);
    double c = 0;
    REQUIRE(gp_char_cosine("قلم", "قلم", &c) == GP_OK);
    CHECK(c == doctest::Approx(1.0));
    CHECK(gp_char_cosine("", "قلم", &c) == GP_ERR_UNDEFINED_SIMILARITY);
    CHECK(gp_levenshtein(nullptr, "a", &d) == GP_ERR_INVALID_ARGUMENT);
    CHECK(gp_undiacritize("a", nullptr) == GP_ERR_INVALID_ARGUMENT);
  }

  TEST_CASE("last error is per thread") {
    char* out = nullptr;
    CHECK(gp_normalize("x", "bogus-main", &out) == GP_ERR_CONFIG);
    std::thread([] {
      char* o = nullptr;
      gp_normalize("x", "bogus-worker", &o);
    }).join();
    CHECK(std::string(gp_last_error()).find("bogus-main") != std::string::npos);
  }

  TEST_CASE("pipeline handle") {
    gp_pipeline* p = nullptr;
    REQUIRE(gp_pipeline_create(&p) == GP_OK);
    const auto cfg = fs::path(GP_SOURCE_DIR) / "data/mini/config.json";
    REQUIRE(gp_pipeline_load_config(p, cfg.c_str()) == GP_OK);
    const auto dir = scratch("capi_pipeline");
    REQUIRE(gp_pipeline_set(p, "out_dir", dir.c_str()) == GP_OK);
    CHECK(gp_pipeline_set(p, "nonsense", "1") == GP_ERR_CONFIG);
    CHECK(gp_pipeline_set(p, "seed", "abc") == GP_ERR_CONFIG);

    char* js = nullptr;
    REQUIRE(gp_pipeline_config_json(p, &js) == GP_OK);
    CHECK(Json::parse(take(js)).at("seed") == 13);

    REQUIRE(gp_run_ingest(p, &js) == GP_OK);
    CHECK(Json::parse(take(js)).at("stats").at("lemmas") == 6);
    REQUIRE(gp_run_pairs(p, nullptr) == GP_OK);
    REQUIRE(gp_run_annotate(p, nullptr) == GP_OK);
    REQUIRE(gp_run_split(p, &js) == GP_OK);
    const auto split = Json::parse(take(js));
    CHECK(split.at("report").at("test").at("true") == 5);
    REQUIRE(gp_run_tag(p, nullptr) == GP_OK);
    REQUIRE(gp_run_stats(p, nullptr) == GP_OK);
    REQUIRE(gp_run_baseline(p, nullptr) == GP_OK);
    REQUIRE(gp_run_stage(p, "eval", &js) == GP_OK);
    CHECK(Json::parse(take(js)).at("stage") == "eval");
    CHECK(fs::exists(dir / "report.json"));

    CHECK(gp_run_stage(p, "bogus", nullptr) == GP_ERR_CONFIG);
    CHECK(gp_pipeline_load_config(p, "/nonexistent/cfg.json") == GP_ERR_CONFIG);
    CHECK(gp_run_stage(nullptr, "ingest", nullptr) == GP_ERR_INVALID_ARGUMENT);
    gp_pipeline_destroy(p);
    gp_pipeline_destroy(nullptr);
  }

  TEST_CASE("stage failure maps to a status") {
    gp_pipeline* p = nullptr;
    REQUIRE(gp_pipeline_create(&p) == GP_OK);
    const auto dir = scratch("capi_empty");
    REQUIRE(gp_pipeline_set(p, "out_dir", dir.c_str()) == GP_OK);
    CHECK(gp_run_pairs(p, nullptr) == GP_ERR_IO);
    CHECK(std::string(gp_last_error()).size() > 0);
    gp_pipeline_destroy(p);
  }

  TEST_CASE("annotation store") {
    const auto path = review_copy("capi_store");
    gp_store* s = nullptr;
    REQUIRE(gp_store_open(path.c_str(), &s) == GP_OK);

    char* js = nullptr;
    REQUIRE(gp_store_queue(s, nullptr, 0, &js) == GP_OK);
    const auto q = Json::parse(take(js));
    CHECK(q.at("total") == 3);
    REQUIRE(q.at("items").size() == 3);
    const std::string id = q.at("items")[0].at("context_id");

    REQUIRE(gp_store_queue(s, "AUTO", 2, &js) == GP_OK);
    CHECK(Json::parse(take(js)).at("items").size() == 2);
    CHECK(gp_store_queue(s, "AUTO,DONE", 0, &js) == GP_ERR_INVALID_ARGUMENT);

    REQUIRE(gp_store_context(s, id.c_str(), &js) == GP_OK);
    const auto ctx = Json::parse(take(js));
    REQUIRE(ctx.at("tokens").is_array());
    CHECK(ctx.at("tokens")[0].contains("offset"));
    CHECK(gp_store_context(s, "missing", &js) == GP_ERR_NOT_FOUND);

    REQUIRE(gp_store_review(s, id.c_str(), "confirm", -1, "lx", 0, &js) == GP_OK);
    const auto after = Json::parse(take(js));
    CHECK(after.at("status") == "VERIFIED");
    CHECK(after.at("revision") == 1);
    CHECK(gp_store_review(s, id.c_str(), "confirm", -1, "lx", 0, &js) == GP_ERR_CONFLICT);
    CHECK(gp_store_review(s, id.c_str(), "correct", 99, "lx", -1, &js) == GP_ERR_OUT_OF_RANGE);
    CHECK(gp_store_review(s, id.c_str(), "correct", -1, "lx", -1, &js) == GP_ERR_INVALID_ARGUMENT);
    CHECK(gp_store_review(s, id.c_str(), "shrug", -1, "lx", -1, &js) == GP_ERR_INVALID_ARGUMENT);
    CHECK(gp_store_review(s, "missing", "confirm", -1, "lx", -1, &js) == GP_ERR_NOT_FOUND);
    REQUIRE(gp_store_review(s, id.c_str(), "correct", 0, "lx", 1, &js) == GP_OK);
    CHECK(Json::parse(take(js)).at("status") == "CORRECTED");

    REQUIRE(gp_store_progress(s, &js) == GP_OK);
    CHECK(Json::parse(take(js)) == Json{{"PENDING", 0}, {"AUTO", 2}, {"VERIFIED", 0}, {"CORRECTED", 1}, {"total", 3}});
    gp_store_close(s);

    // Reopening sees the persisted snapshot.
    REQUIRE(gp_store_open(path.c_str(), &s) == GP_OK);
    REQUIRE(gp_store_context(s, id.c_str(), &js) == GP_OK);
    const auto re = Json::parse(take(js));
    CHECK(re.at("revision") == 2);
    CHECK(re.at("chosen_index") == 0);
    gp_store_close(s);

    CHECK(gp_store_open("/nonexistent/a.jsonl", &s) != GP_OK);
  }
}
