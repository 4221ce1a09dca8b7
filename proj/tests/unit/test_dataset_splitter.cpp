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

#include <map>
#include <set>

#include "core/dataset_splitter.hpp"
#include "core/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace glosspair;
using split::SplitResult;
using split::Verification;
using split::verify_split;
using split::uniform_index;
using pairs::ContextGlossPair;
using pairs::Label;

namespace {

lexicon::SenseRecord sense(std::string id, std::string lemma, std::string gloss, std::vector<std::string> ctx) {
  lexicon::SenseRecord s;
  s.sense_id = std::move(id);
  s.lemma_key = lemma;
  s.lemma_diacritized = lemma;
  s.lexicon_id = "w";
  s.gloss = std::move(gloss);
  s.contexts = std::move(ctx);
  return s;
}

std::vector<ContextGlossPair> fixture_pairs() {
  return gp_test::all_pairs({
      sense("w-L2-S1", "عين", "عضو الإبصار", {"رأيت بعيني الطائر", "أغمض الرجل عينه", "دمعت عينه"}),
      sense("w-L2-S2", "عين", "ينبوع الماء", {"شربنا من عين الماء"}),
      sense("w-L3-S1", "رأس", "أعلى الجسد", {"ضرب رأسه", "رفع رأسه"}),
      sense("w-L3-S2", "رأس", "سيد القوم", {"رأس القبيلة"}),
      sense("w-L4-S1", "قلم", "أداة الكتابة", {"كتبت بالقلم"}),
  });
}

bool check_passed(const Verification& v, const std::string& name) {
  for (const auto& c : v.checks) {
    if (c.name == name) return c.passed;
  }
  FAIL("no check named " << name);
  return false;
}

// Property oracle, independent of verify_split.
void expect_sound(const std::vector<ContextGlossPair>& all, const SplitResult& r) {
  std::map<std::string, const ContextGlossPair*> by_id;
  for (const auto& p : all) by_id[p.pair_id] = &p;
  std::set<std::string> train(r.train.begin(), r.train.end()), test(r.test.begin(), r.test.end());
  CHECK(train.size() + test.size() == all.size());
  std::set<std::string> train_ctx, test_ctx;
  for (const auto& id : train) {
    REQUIRE(by_id.count(id));
    CHECK(test.count(id) == 0);
    train_ctx.insert(by_id[id]->context_id);
  }
  for (const auto& id : test) test_ctx.insert(by_id.at(id)->context_id);
  for (const auto& c : test_ctx) CHECK(train_ctx.count(c) == 0);

  std::map<std::string, std::pair<std::size_t, std::size_t>> per_gloss;  // train, test True
  for (const auto& p : all) {
    if (p.label != Label::True) continue;
    (test.count(p.pair_id) ? per_gloss[p.gloss_id].second : per_gloss[p.gloss_id].first)++;
  }
  for (const auto& [g, tt] : per_gloss) {
    if (tt.first + tt.second >= 2) {
      CHECK(tt.second == 1);
      CHECK(tt.first >= 1);
    } else {
      CHECK(tt.second == 0);
    }
  }
  for (const auto& p : all) {
    if (p.label == Label::False && test_ctx.count(p.context_id)) CHECK(test.count(p.pair_id) == 1);
  }
}

}  // namespace

TEST_SUITE("dataset-splitter") {

TEST_CASE("uniform_index stays in range and is roughly uniform") {
  std::mt19937_64 rng(3);
  std::vector<std::size_t> counts(3);
  for (int i = 0; i < 30000; ++i) ++counts.at(uniform_index(rng, 3));
  for (auto c : counts) CHECK(c == doctest::Approx(10000).epsilon(0.05));
  CHECK(uniform_index(rng, 1) == 0);
  CHECK_THROWS_AS(uniform_index(rng, 0), Error);
}

TEST_CASE("split of the worked fixture") {
  const auto all = fixture_pairs();
  const auto r = split::split(all, 13);
  // two multi-context glosses, so two test contexts; each has one False partner gloss
  CHECK(r.report.test_true == 2);
  CHECK(r.report.test_false == 2);
  CHECK(r.report.train_true == 6);
  CHECK(r.report.train_false == 5);  // 7 False in all: (3+1)*1 + (2+1)*1
  CHECK(r.seed == 13);
  CHECK(verify_split(all, r).passed());
  expect_sound(all, r);
}

TEST_CASE("same seed, same split; seeds do vary the choice") {
  const auto all = fixture_pairs();
  std::set<std::vector<std::string>> distinct;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto a = split::split(all, seed);
    CHECK(a.test == split::split(all, seed).test);
    distinct.insert(a.test);
  }
  CHECK(distinct.size() > 1);
}

TEST_CASE("split is independent of input order") {
  auto all = fixture_pairs();
  const auto a = split::split(all, 5);
  std::reverse(all.begin(), all.end());
  CHECK(split::split(all, 5).test == a.test);
}

TEST_CASE("no gloss with two contexts means no test set") {
  const auto all = gp_test::all_pairs({sense("w-L2-S1", "قلم", "أداة الكتابة", {"كتبت بالقلم"})});
  try {
    split::split(all, 1);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyTest);
  }
}

TEST_CASE("property: random inventories over many seeds") {
  gp_test::Rng rng(77);
  for (int round = 0; round < 30; ++round) {
    const auto all = gp_test::all_pairs(gp_test::random_inventory(rng, 20, 4, 4));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      SplitResult r;
      try {
        r = split::split(all, seed);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyTest);
        break;
      }
      CHECK(verify_split(all, r).passed());
      expect_sound(all, r);
    }
  }
}

TEST_CASE("fault injection is detected") {
  const auto all = fixture_pairs();
  const auto good = split::split(all, 21);
  std::map<std::string, const ContextGlossPair*> by_id;
  for (const auto& p : all) by_id[p.pair_id] = &p;

  SUBCASE("pair in both sets") {
    auto r = good;
    r.train.push_back(r.test.front());
    std::sort(r.train.begin(), r.train.end());
    CHECK_FALSE(check_passed(verify_split(all, r), "partition"));
  }
  SUBCASE("pair missing") {
    auto r = good;
    r.train.pop_back();
    CHECK_FALSE(check_passed(verify_split(all, r), "partition"));
  }
  SUBCASE("test False pair leaks into train") {
    auto r = good;
    auto it = std::find_if(r.test.begin(), r.test.end(), [&](auto& id) { return by_id[id]->label == Label::False; });
    REQUIRE(it != r.test.end());
    r.train.push_back(*it);
    r.test.erase(it);
    std::sort(r.train.begin(), r.train.end());
    const auto v = verify_split(all, r);
    CHECK_FALSE(check_passed(v, "context_disjoint"));
    CHECK_FALSE(check_passed(v, "test_false_closure"));
  }
  SUBCASE("multi-context gloss absent from test") {
    auto r = good;
    std::vector<std::string> keep;
    for (auto& id : r.test) (by_id[id]->gloss_id == "w-L3-S1" || by_id[id]->context_id.rfind("w-L3-S1", 0) == 0
                                 ? r.train : keep).push_back(id);
    r.test = keep;
    std::sort(r.train.begin(), r.train.end());
    CHECK_FALSE(check_passed(verify_split(all, r), "multi_context_glosses_in_both"));
  }
  SUBCASE("single-context gloss moved to test") {
    auto r = good;
    auto it = std::find_if(r.train.begin(), r.train.end(), [&](auto& id) { return by_id[id]->gloss_id == "w-L4-S1"; });
    REQUIRE(it != r.train.end());
    r.test.push_back(*it);
    r.train.erase(it);
    std::sort(r.test.begin(), r.test.end());
    CHECK_FALSE(check_passed(verify_split(all, r), "single_context_glosses_in_train"));
  }
  SUBCASE("report tampered") {
    auto r = good;
    r.report.test_true += 1;
    CHECK_FALSE(check_passed(verify_split(all, r), "report_counts"));
  }
}

}  // TEST_SUITE
