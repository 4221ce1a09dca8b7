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

#include "core/arabic_text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "builtin_profiles.hpp"
#include "core/error.hpp"
#include "core/utf8.hpp"

namespace glosspair::text {

bool is_space(char32_t cp) noexcept {
  switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\v': case U'\f':
    case 0x00A0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
    case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_punctuation(char32_t cp) noexcept {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  switch (cp) {
    case 0x00AB: case 0x00BB:                      // guillemets
    case 0x060C: case 0x061B: case 0x061F:         // Arabic comma, semicolon, question mark
    case 0x066A: case 0x066B: case 0x066C: case 0x066D:
    case 0x06D4:                                   // Arabic full stop
    case 0x2026: case 0x2013: case 0x2014:
      return true;
    default:
      return cp >= 0x2018 && cp <= 0x201F;         // curly quotes
  }
}

std::u32string undiacritize(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (!is_diacritic(cp)) out.push_back(cp);
  }
  return out;
}

std::string undiacritize(std::string_view text) {
  return utf8::encode(undiacritize(utf8::decode(text)));
}

// ---------------------------------------------------------------------------
// Normalization profiles

NormProfile::NormProfile(std::string name, bool strip_diacritics, std::vector<NormRule> rules)
    : name_(std::move(name)), strip_diacritics_(strip_diacritics), rules_(std::move(rules)) {
  if (name_.empty()) throw Error(ErrorCode::Config, "normalization profile needs a name");
  std::unordered_set<char32_t> sources;
  for (const auto& r : rules_) {
    if (!sources.insert(r.source).second) {
      throw Error(ErrorCode::Config, "profile '" + name_ + "': duplicate source codepoint");
    }
  }
  for (const auto& r : rules_) {
    if (sources.count(r.target) != 0) {
      throw Error(ErrorCode::Config,
                  "profile '" + name_ + "': rule target is also a source, rules would not be idempotent");
    }
    if (is_diacritic(r.target)) {
      throw Error(ErrorCode::Config, "profile '" + name_ + "': rule target is a diacritic");
    }
  }
}

namespace {

char32_t parse_codepoint(std::string_view field, std::size_t line_no) {
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorCode::Config, "profile rule line " + std::to_string(line_no) + ": " + why);
  };
  if (field.size() > 2 && (field[0] == 'U' || field[0] == 'u') && field[1] == '+') {
    std::string hex(field.substr(2));
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(hex, &used, 16);
    } catch (const std::exception&) {
      throw fail("bad hex codepoint '" + std::string(field) + "'");
    }
    if (used != hex.size() || v > 0x10FFFF) throw fail("bad hex codepoint '" + std::string(field) + "'");
    return static_cast<char32_t>(v);
  }
  const std::u32string cps = utf8::decode(field);
  if (cps.size() != 1) throw fail("expected a single codepoint, got '" + std::string(field) + "'");
  return cps[0];
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

NormProfile NormProfile::from_tsv(std::string name, std::string_view tsv, bool strip_diacritics) {
  std::vector<NormRule> rules;
  std::size_t line_no = 0;
  while (!tsv.empty()) {
    const auto nl = tsv.find('\n');
    std::string_view line = tsv.substr(0, nl);
    tsv = nl == std::string_view::npos ? std::string_view{} : tsv.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos) {
      throw Error(ErrorCode::Config,
                  "profile rule line " + std::to_string(line_no) + ": expected two tab-separated columns");
    }
    rules.push_back({parse_codepoint(trim(line.substr(0, tab)), line_no),
                     parse_codepoint(trim(line.substr(tab + 1)), line_no)});
  }
  return NormProfile(std::move(name), strip_diacritics, std::move(rules));
}

NormProfile NormProfile::load(const std::filesystem::path& path, std::string name, bool strip_diacritics) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read profile file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_tsv(std::move(name), ss.str(), strip_diacritics);
}

std::u32string NormProfile::apply(std::u32string_view text) const {
  std::u32string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (strip_diacritics_ && is_diacritic(cp)) continue;
    for (const auto& r : rules_) {
      if (r.source == cp) {
        cp = r.target;
        break;
      }
    }
    out.push_back(cp);
  }
  return out;
}

std::string NormProfile::apply(std::string_view text) const {
  if (is_identity()) return std::string(text);
  return utf8::encode(apply(utf8::decode(text)));
}

const NormProfile& builtin_profile(std::string_view name) {
  static const NormProfile none("none", false, {});
  static const NormProfile camel = NormProfile::from_tsv("camel", builtin::kCamelRuleTable, true);
  if (name == "none") return none;
  if (name == "camel") return camel;
  throw Error(ErrorCode::Config, "unknown normalization profile '" + std::string(name) + "'");
}

std::vector<std::string> builtin_profile_names() { return {"none", "camel"}; }

// ---------------------------------------------------------------------------
// Similarity

CharVector char_vector(std::string_view text) {
  CharVector v;
  for (char32_t cp : utf8::decode(text)) {
    if (!is_diacritic(cp)) ++v[cp];
  }
  return v;
}

double cosine(const CharVector& a, const CharVector& b) noexcept {
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [cp, n] : a) {
    na += static_cast<double>(n) * static_cast<double>(n);
    if (auto it = b.find(cp); it != b.end()) {
      dot += static_cast<double>(n) * static_cast<double>(it->second);
    }
  }
  for (const auto& [cp, n] : b) nb += static_cast<double>(n) * static_cast<double>(n);
  if (na == 0.0 || nb == 0.0) return 0.0;
  if (a == b) return 1.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

double char_cosine(std::string_view a, std::string_view b) {
  const CharVector va = char_vector(a);
  const CharVector vb = char_vector(b);
  if (va.empty() || vb.empty()) {
    throw Error(ErrorCode::UndefinedSimilarity, "char_cosine: empty input after undiacritization");
  }
  return cosine(va, vb);
}

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return a.size();
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, sub});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(utf8::decode(a), utf8::decode(b));
}

// ---------------------------------------------------------------------------
// Tokenization

std::vector<Token> tokenize(std::string_view text) {
  const std::u32string cps = utf8::decode(text);
  // Byte offset of every codepoint, plus one past the end.
  std::vector<std::size_t> byte_at(cps.size() + 1, 0);
  {
    std::size_t b = 0;
    std::string scratch;
    for (std::size_t i = 0; i < cps.size(); ++i) {
      byte_at[i] = b;
      scratch.clear();
      utf8::append(scratch, cps[i]);
      b += scratch.size();
    }
    byte_at[cps.size()] = b;
  }

  std::vector<Token> out;
  auto emit = [&](std::size_t begin, std::size_t end, bool word) {
    Token t;
    t.offset = begin;
    t.byte_offset = byte_at[begin];
    t.byte_length = byte_at[end] - byte_at[begin];
    t.text = std::string(text.substr(t.byte_offset, t.byte_length));
    t.is_word = word;
    out.push_back(std::move(t));
  };

  std::size_t i = 0;
  while (i < cps.size()) {
    if (is_space(cps[i])) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < cps.size() && !is_space(cps[end])) ++end;
    // [i, end) is one whitespace-delimited chunk.
    std::size_t core_begin = i;
    while (core_begin < end && is_punctuation(cps[core_begin])) ++core_begin;
    std::size_t core_end = end;
    while (core_end > core_begin && is_punctuation(cps[core_end - 1])) --core_end;
    for (std::size_t k = i; k < core_begin; ++k) emit(k, k + 1, false);
    if (core_begin < core_end) emit(core_begin, core_end, true);
    for (std::size_t k = core_end; k < end; ++k) emit(k, k + 1, false);
    i = end;
  }
  return out;
}

std::size_t word_count(std::string_view text) {
  std::size_t n = 0;
  for (const auto& t : tokenize(text)) n += t.is_word ? 1 : 0;
  return n;
}

}  // namespace glosspair::text
