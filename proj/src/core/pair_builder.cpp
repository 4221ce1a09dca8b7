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

#include "core/pair_builder.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "core/error.hpp"
#include "core/hashing.hpp"

namespace glosspair::pairs {

std::string make_pair_id(const std::string& lemma_key, const std::string& context_id,
                         const std::string& gloss_id, Label label) {
  std::string material;
  material.reserve(lemma_key.size() + context_id.size() + gloss_id.size() + 16);
  material.append(lemma_key).push_back('\x1f');
  material.append(context_id).push_back('\x1f');
  material.append(gloss_id).push_back('\x1f');
  material.append(label_name(label));
  return hashing::sha256_hex(material).substr(0, 16);
}

std::string make_context_id(const std::string& sense_id, std::size_t k) {
  return sense_id + "-C" + std::to_string(k);
}

void sort_by_pair_id(std::vector<ContextGlossPair>& pairs) {
  std::sort(pairs.begin(), pairs.end(),
            [](const ContextGlossPair& a, const ContextGlossPair& b) { return a.pair_id < b.pair_id; });
  const auto dup = std::adjacent_find(pairs.begin(), pairs.end(),
                                      [](const auto& a, const auto& b) { return a.pair_id == b.pair_id; });
  if (dup != pairs.end()) throw Error(ErrorCode::Data, "duplicate pair_id " + dup->pair_id);
}

std::vector<ContextGlossPair> build_true_pairs(const std::vector<lexicon::SenseRecord>& senses) {
  std::vector<ContextGlossPair> out;
  for (const auto& s : senses) {
    for (std::size_t k = 0; k < s.contexts.size(); ++k) {
      ContextGlossPair p;
      p.lemma_key = s.lemma_key;
      p.context_id = make_context_id(s.sense_id, k + 1);
      p.context_text = s.contexts[k];
      p.gloss_id = s.sense_id;
      p.gloss_text = s.gloss;
      p.label = Label::True;
      p.pair_id = make_pair_id(p.lemma_key, p.context_id, p.gloss_id, p.label);
      out.push_back(std::move(p));
    }
  }
  sort_by_pair_id(out);
  return out;
}

std::vector<ContextGlossPair> build_false_pairs(const std::vector<ContextGlossPair>& true_pairs) {
  struct Gloss {
    std::string text;
  };
  struct LemmaGroup {
    std::map<std::string, Gloss> glosses;                       // gloss_id -> gloss
    std::vector<const ContextGlossPair*> contexts;              // the True pairs
  };
  std::map<std::string, LemmaGroup> lemmas;
  for (const auto& p : true_pairs) {
    if (p.label != Label::True) throw Error(ErrorCode::Data, "build_false_pairs expects True pairs only");
    auto& g = lemmas[p.lemma_key];
    g.glosses.emplace(p.gloss_id, Gloss{p.gloss_text});
    g.contexts.push_back(&p);
  }

  std::vector<ContextGlossPair> out;
  for (const auto& [lemma, group] : lemmas) {
    if (group.glosses.size() < 2) continue;
    std::set<std::pair<std::string, std::string>> positive;
    for (const auto* t : group.contexts) positive.emplace(t->context_id, t->gloss_id);
    std::set<std::string> seen_contexts;
    for (const auto* t : group.contexts) {
      if (!seen_contexts.insert(t->context_id).second) continue;
      for (const auto& [gloss_id, gloss] : group.glosses) {
        if (positive.count({t->context_id, gloss_id}) != 0) continue;
        ContextGlossPair p;
        p.lemma_key = lemma;
        p.context_id = t->context_id;
        p.context_text = t->context_text;
        p.gloss_id = gloss_id;
        p.gloss_text = gloss.text;
        p.label = Label::False;
        p.pair_id = make_pair_id(p.lemma_key, p.context_id, p.gloss_id, p.label);
        out.push_back(std::move(p));
      }
    }
  }
  sort_by_pair_id(out);
  return out;
}

PairStats pair_stats(const std::vector<ContextGlossPair>& pairs) {
  PairStats st;
  for (const auto& p : pairs) {
    (p.label == Label::True ? st.true_pairs : st.false_pairs) += 1;
  }
  return st;
}

}  // namespace glosspair::pairs
