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

#include "core/dataset_splitter.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include "core/error.hpp"

namespace glosspair::split {

using pairs::ContextGlossPair;
using pairs::Label;

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "uniform_index: empty range");
  // Reject the top partial bucket so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  while (true) {
    const std::uint64_t v = rng();
    if (v < limit) return v % n;
  }
}

namespace {

// gloss_id -> True pairs of that gloss, ordered by context_id.
std::map<std::string, std::vector<const ContextGlossPair*>> true_by_gloss(const std::vector<ContextGlossPair>& pairs) {
  std::map<std::string, std::vector<const ContextGlossPair*>> groups;
  for (const auto& p : pairs) {
    if (p.label == Label::True) groups[p.gloss_id].push_back(&p);
  }
  for (auto& [_, g] : groups) {
    std::sort(g.begin(), g.end(), [](const auto* a, const auto* b) { return a->context_id < b->context_id; });
  }
  return groups;
}

}  // namespace

SplitResult split(const std::vector<ContextGlossPair>& pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto groups = true_by_gloss(pairs);

  std::set<std::string> test_contexts;
  for (const auto& [gloss, members] : groups) {
    if (members.size() < 2) continue;
    const auto pick = uniform_index(rng, members.size());
    test_contexts.insert(members[pick]->context_id);
  }
  if (test_contexts.empty()) {
    throw Error(ErrorCode::EmptyTest, "no gloss has two or more contexts; the test split would be empty");
  }

  SplitResult r;
  r.seed = seed;
  for (const auto& p : pairs) {
    const bool is_test = test_contexts.count(p.context_id) != 0;
    (is_test ? r.test : r.train).push_back(p.pair_id);
    if (is_test) {
      (p.label == Label::True ? r.report.test_true : r.report.test_false) += 1;
    } else {
      (p.label == Label::True ? r.report.train_true : r.report.train_false) += 1;
    }
  }
  std::sort(r.train.begin(), r.train.end());
  std::sort(r.test.begin(), r.test.end());
  return r;
}

bool Verification::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

Verification verify_split(const std::vector<ContextGlossPair>& pairs, const SplitResult& result) {
  Verification v;
  auto add = [&](std::string name, bool ok, std::string detail) {
    v.checks.push_back({std::move(name), ok, ok ? std::string{} : std::move(detail)});
  };

  std::unordered_map<std::string, const ContextGlossPair*> by_id;
  for (const auto& p : pairs) by_id.emplace(p.pair_id, &p);

  // Partition: every pair in exactly one split, no unknown ids.
  {
    std::unordered_map<std::string, int> seen;
    std::string detail;
    for (const auto* list : {&result.train, &result.test}) {
      for (const auto& id : *list) {
        if (by_id.count(id) == 0 && detail.empty()) detail = "unknown pair_id " + id;
        if (++seen[id] > 1 && detail.empty()) detail = "pair_id in both splits or repeated: " + id;
      }
    }
    if (detail.empty() && seen.size() != by_id.size()) {
      detail = std::to_string(by_id.size() - std::min(by_id.size(), seen.size())) + " pairs assigned to no split";
    }
    add("partition", detail.empty(), detail);
  }

  std::vector<const ContextGlossPair*> train;
  std::vector<const ContextGlossPair*> test;
  for (const auto& id : result.train) if (auto it = by_id.find(id); it != by_id.end()) train.push_back(it->second);
  for (const auto& id : result.test) if (auto it = by_id.find(id); it != by_id.end()) test.push_back(it->second);

  // Criterion (i): no context on both sides.
  {
    std::set<std::string> test_ctx;
    for (const auto* p : test) test_ctx.insert(p->context_id);
    std::string detail;
    for (const auto* p : train) {
      if (test_ctx.count(p->context_id) != 0) {
        detail = "context " + p->context_id + " appears in train and test";
        break;
      }
    }
    add("context_disjoint", detail.empty(), detail);
  }

  // Criterion (ii): multi-context glosses on both sides, exactly one test True;
  // single-context glosses keep their True pair in train.
  {
    const auto groups = true_by_gloss(pairs);
    std::map<std::string, std::size_t> train_true;
    std::map<std::string, std::size_t> test_true;
    for (const auto* p : train) if (p->label == Label::True) ++train_true[p->gloss_id];
    for (const auto* p : test) if (p->label == Label::True) ++test_true[p->gloss_id];
    std::string multi_detail;
    std::string single_detail;
    for (const auto& [gloss, members] : groups) {
      const std::size_t tr = train_true.count(gloss) ? train_true[gloss] : 0;
      const std::size_t te = test_true.count(gloss) ? test_true[gloss] : 0;
      if (members.size() >= 2) {
        if ((tr < 1 || te != 1) && multi_detail.empty()) {
          multi_detail = "gloss " + gloss + ": train True " + std::to_string(tr) + ", test True " + std::to_string(te);
        }
      } else if (te != 0 && single_detail.empty()) {
        single_detail = "single-context gloss " + gloss + " has a True pair in test";
      }
    }
    add("multi_context_glosses_in_both", multi_detail.empty(), multi_detail);
    add("single_context_glosses_in_train", single_detail.empty(), single_detail);
  }

  // Reported counts.
  {
    SplitCounts actual;
    for (const auto* p : train) (p->label == Label::True ? actual.train_true : actual.train_false) += 1;
    for (const auto* p : test) (p->label == Label::True ? actual.test_true : actual.test_false) += 1;
    add("report_counts", actual == result.report, "report does not match the split contents");
  }

  // Test False pairs are exactly the cross-relation closure of test contexts.
  {
    std::map<std::string, std::set<std::string>> glosses_of_lemma;
    std::map<std::string, std::pair<std::string, std::string>> context_home;  // context -> (lemma, gloss)
    for (const auto& p : pairs) {
      if (p.label != Label::True) continue;
      glosses_of_lemma[p.lemma_key].insert(p.gloss_id);
      context_home[p.context_id] = {p.lemma_key, p.gloss_id};
    }
    std::set<std::pair<std::string, std::string>> expected;
    for (const auto* p : test) {
      if (p->label != Label::True) continue;
      for (const auto& g : glosses_of_lemma[p->lemma_key]) {
        if (g != p->gloss_id) expected.emplace(p->context_id, g);
      }
    }
    std::set<std::pair<std::string, std::string>> actual;
    std::string detail;
    for (const auto* p : test) {
      if (p->label != Label::False) continue;
      actual.emplace(p->context_id, p->gloss_id);
      const auto home = context_home.find(p->context_id);
      if (home == context_home.end() && detail.empty()) detail = "test False pair with orphan context " + p->context_id;
    }
    if (detail.empty() && actual != expected) {
      std::vector<std::pair<std::string, std::string>> missing;
      std::set_difference(expected.begin(), expected.end(), actual.begin(), actual.end(), std::back_inserter(missing));
      detail = missing.empty() ? "test False pairs exceed the closure"
                               : "missing test False pair (" + missing.front().first + ", " + missing.front().second + ")";
    }
    add("test_false_closure", detail.empty(), detail);
  }
  return v;
}

}  // namespace glosspair::split
