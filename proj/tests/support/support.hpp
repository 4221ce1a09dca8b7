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

// Hand-rolled generators and fixture loaders shared by the test binaries.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core/lexicon_ingest.hpp"
#include "core/pair_builder.hpp"
#include "core/utf8.hpp"

namespace gp_test {

inline std::filesystem::path source_dir() { return GP_SOURCE_DIR; }
inline std::filesystem::path fixture(const std::string& name) { return source_dir() / "tests" / "fixtures" / name; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Fresh scratch directory under the build tree.
inline std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::path(GP_BINARY_DIR) / "scratch" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Modulo bias is irrelevant for test data.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool chance(unsigned percent) { return below(100) < percent; }
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Arabic letters U+0621..U+063A and U+0641..U+064A.
inline char32_t arabic_letter(Rng& rng) {
  const std::size_t i = rng.below(26 + 10);
  return i < 26 ? static_cast<char32_t>(0x0621 + i) : static_cast<char32_t>(0x0641 + (i - 26));
}

inline std::string arabic_word(Rng& rng, std::size_t min_len, std::size_t max_len, unsigned diacritic_percent = 0) {
  std::u32string w;
  const std::size_t n = rng.between(min_len, max_len);
  for (std::size_t i = 0; i < n; ++i) {
    w.push_back(arabic_letter(rng));
    if (rng.chance(diacritic_percent)) w.push_back(static_cast<char32_t>(0x064B + rng.below(8)));
  }
  return glosspair::utf8::encode(w);
}

inline std::string arabic_phrase(Rng& rng, std::size_t min_words, std::size_t max_words) {
  std::string out;
  const std::size_t n = rng.between(min_words, max_words);
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += arabic_word(rng, 2, 7);
  }
  return out;
}

/// Random sense inventory satisfying the sense-record invariants. Lemma keys
/// are unique; glosses and contexts are unique strings.
inline std::vector<glosspair::lexicon::SenseRecord> random_inventory(Rng& rng, std::size_t max_lemmas,
                                                                     std::size_t max_glosses,
                                                                     std::size_t max_contexts) {
  std::vector<glosspair::lexicon::SenseRecord> out;
  std::set<std::string> lemmas, texts;
  const std::size_t n_lemmas = rng.between(1, max_lemmas);
  auto fresh_phrase = [&] {
    for (;;) {
      auto p = arabic_phrase(rng, 2, 8);
      if (texts.insert(p).second) return p;
    }
  };
  for (std::size_t l = 0; l < n_lemmas; ++l) {
    std::string lemma;
    do {
      lemma = arabic_word(rng, 2, 6);
    } while (!lemmas.insert(lemma).second);
    const std::size_t g = rng.between(1, max_glosses);
    for (std::size_t k = 1; k <= g; ++k) {
      glosspair::lexicon::SenseRecord s;
      s.lexicon_id = "lex";
      s.sense_id = "lex-L" + std::to_string(l + 2) + "-S" + std::to_string(k);
      s.lemma_key = lemma;
      s.lemma_diacritized = lemma;
      s.gloss = fresh_phrase();
      const std::size_t c = rng.between(1, max_contexts);
      for (std::size_t j = 0; j < c; ++j) s.contexts.push_back(lemma + " " + fresh_phrase());
      out.push_back(std::move(s));
    }
  }
  return out;
}

inline std::vector<glosspair::pairs::ContextGlossPair> all_pairs(
    const std::vector<glosspair::lexicon::SenseRecord>& senses) {
  auto all = glosspair::pairs::build_true_pairs(senses);
  auto f = glosspair::pairs::build_false_pairs(all);
  all.insert(all.end(), f.begin(), f.end());
  glosspair::pairs::sort_by_pair_id(all);
  return all;
}

struct TargetFixture {
  std::string id;
  std::string lemma_key;
  std::size_t gold = 0;
  bool multi = false;
  std::string context;
};

inline std::vector<TargetFixture> load_target_fixtures() {
  std::vector<TargetFixture> out;
  std::istringstream in(slurp(fixture("targets.tsv")));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (;;) {
      const auto tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() != 5) continue;
    out.push_back({cols[0], cols[1], std::stoul(cols[2]), cols[3] == "1", cols[4]});
  }
  return out;
}

}  // namespace gp_test
