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

// Arabic text primitives: undiacritization, normalization profiles,
// tokenization, character-occurrence vectors and edit distance. Everything
// here is pure and safe to call concurrently.

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace glosspair::text {

/// The eight harakat, U+064B..U+0652.
constexpr bool is_diacritic(char32_t cp) noexcept {
  return cp >= 0x064B && cp <= 0x0652;
}

bool is_space(char32_t cp) noexcept;
bool is_punctuation(char32_t cp) noexcept;

std::string undiacritize(std::string_view text);
std::u32string undiacritize(std::u32string_view text);

struct NormRule {
  char32_t source;
  char32_t target;
  bool operator==(const NormRule&) const = default;
};

/// A named orthographic normalization. Construction validates that the rule
/// set is idempotent: sources are unique, no target is itself a source, and no
/// target is a diacritic.
class NormProfile {
 public:
  NormProfile(std::string name, bool strip_diacritics, std::vector<NormRule> rules);

  /// Parses `source<TAB>target` lines. Either column may be a literal
  /// character or U+XXXX. Blank lines and lines starting with '#' are skipped.
  static NormProfile from_tsv(std::string name, std::string_view tsv,
                              bool strip_diacritics = true);
  static NormProfile load(const std::filesystem::path& path, std::string name,
                          bool strip_diacritics = true);

  const std::string& name() const noexcept { return name_; }
  bool strip_diacritics() const noexcept { return strip_diacritics_; }
  std::span<const NormRule> rules() const noexcept { return rules_; }
  bool is_identity() const noexcept { return !strip_diacritics_ && rules_.empty(); }

  std::u32string apply(std::u32string_view text) const;
  std::string apply(std::string_view text) const;

 private:
  std::string name_;
  bool strip_diacritics_;
  std::vector<NormRule> rules_;
};

/// Registered profiles: "none" (identity) and "camel".
/// Throws Error(Config) for any other name.
const NormProfile& builtin_profile(std::string_view name);
std::vector<std::string> builtin_profile_names();

inline std::string normalize(std::string_view text, const NormProfile& profile) {
  return profile.apply(text);
}

/// Codepoint -> occurrence count over the undiacritized text.
using CharVector = std::map<char32_t, std::size_t>;

CharVector char_vector(std::string_view text);
double cosine(const CharVector& a, const CharVector& b) noexcept;

/// Cosine of the two character-occurrence vectors. Throws
/// Error(UndefinedSimilarity) if either side is empty after undiacritization.
double char_cosine(std::string_view a, std::string_view b);

/// Codepoint-level edit distance with unit insert/delete/substitute costs.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
std::size_t levenshtein(std::string_view a, std::string_view b);

struct Token {
  std::string text;
  std::size_t offset = 0;       // codepoints from the start of the input
  std::size_t byte_offset = 0;
  std::size_t byte_length = 0;
  bool is_word = false;         // false for detached punctuation
};

/// Splits on whitespace and detaches leading/trailing punctuation, one token
/// per punctuation character. Offsets index into the original string.
std::vector<Token> tokenize(std::string_view text);

/// Number of non-punctuation tokens.
std::size_t word_count(std::string_view text);

}  // namespace glosspair::text
