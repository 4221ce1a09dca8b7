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

// Target-word identification. Four independent detectors (substring,
// character cosine, edit distance, lemma table lookup) each nominate tokens;
// their nominations are merged per token and ranked for review.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/arabic_text.hpp"
#include "core/pair_builder.hpp"

namespace glosspair::annotate {

/// Cosine scores must be strictly above this to nominate a token.
inline constexpr double kCosineThreshold = 0.75;

enum class Method : std::uint8_t {
  Substring = 1 << 0,
  Cosine = 1 << 1,
  Levenshtein = 1 << 2,
  Lemmatizer = 1 << 3,
};

const char* method_name(Method m) noexcept;
std::optional<Method> method_from_name(std::string_view name) noexcept;
inline constexpr Method kAllMethods[] = {Method::Substring, Method::Cosine, Method::Levenshtein, Method::Lemmatizer};

class MethodSet {
 public:
  MethodSet() = default;
  explicit MethodSet(Method m) : bits_(static_cast<std::uint8_t>(m)) {}

  void insert(Method m) noexcept { bits_ |= static_cast<std::uint8_t>(m); }
  bool contains(Method m) const noexcept { return (bits_ & static_cast<std::uint8_t>(m)) != 0; }
  bool empty() const noexcept { return bits_ == 0; }
  std::size_t size() const noexcept;
  MethodSet& operator|=(MethodSet o) noexcept { bits_ |= o.bits_; return *this; }
  bool operator==(const MethodSet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

struct CandidateTarget {
  std::size_t token_index = 0;
  std::string surface;
  MethodSet method_hits;
  std::optional<double> cosine_score;        // present iff Cosine is a hit
  std::optional<std::size_t> edit_distance;  // present iff Levenshtein is a hit

  bool operator==(const CandidateTarget&) const = default;
};

enum class Status { Pending, Auto, Verified, Corrected };
const char* status_name(Status s) noexcept;
std::optional<Status> status_from_name(std::string_view name) noexcept;

struct AuditEntry {
  std::uint64_t revision = 0;  // revision after the change
  std::string action;          // "confirm" or "correct"
  std::string reviewer;
  std::optional<std::size_t> previous_index;
  Status previous_status = Status::Pending;
  std::optional<std::size_t> new_index;

  bool operator==(const AuditEntry&) const = default;
};

struct ContextAnnotation {
  std::string context_id;
  std::string lemma_key;
  std::string context_text;
  std::vector<CandidateTarget> candidates;  // ranked, best first
  std::optional<std::size_t> chosen_index;
  Status status = Status::Pending;
  bool multi_occurrence = false;
  std::uint64_t revision = 0;
  std::vector<AuditEntry> audit;

  bool operator==(const ContextAnnotation&) const = default;
};

/// Undiacritized surface form -> lemma keys. Many-to-many.
class LemmaTable {
 public:
  void add(std::string_view surface, std::string_view lemma_key);
  const std::set<std::string>* lookup(std::string_view undiacritized_surface) const;
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// `surface<TAB>lemma_key` lines; '#' comments and blank lines skipped.
  static LemmaTable parse(std::string_view tsv);
  static LemmaTable load(const std::filesystem::path& path);

 private:
  std::map<std::string, std::set<std::string>, std::less<>> entries_;
};

// Detectors. Only word tokens (not detached punctuation) are considered, and
// comparisons use the undiacritized token surface.
std::vector<CandidateTarget> method_substring(std::string_view lemma_key, std::span<const text::Token> tokens);
std::optional<CandidateTarget> method_cosine(std::string_view lemma_key, std::span<const text::Token> tokens);
/// Nominates the token *closest* to the lemma (minimum edit distance).
std::optional<CandidateTarget> method_levenshtein(std::string_view lemma_key, std::span<const text::Token> tokens);
std::vector<CandidateTarget> method_lemmatize(std::string_view lemma_key, std::span<const text::Token> tokens,
                                              const LemmaTable& table);

std::vector<CandidateTarget> method_substring(std::string_view lemma_key, std::string_view context);
std::optional<CandidateTarget> method_cosine(std::string_view lemma_key, std::string_view context);
std::optional<CandidateTarget> method_levenshtein(std::string_view lemma_key, std::string_view context);
std::vector<CandidateTarget> method_lemmatize(std::string_view lemma_key, std::string_view context,
                                              const LemmaTable& table);

struct MethodResults {
  std::vector<CandidateTarget> substring;
  std::optional<CandidateTarget> cosine;
  std::optional<CandidateTarget> levenshtein;
  std::vector<CandidateTarget> lemmatizer;
};

/// Merges by token_index and orders by (more hits, higher cosine, smaller
/// edit distance, earlier token).
std::vector<CandidateTarget> combine_candidates(const MethodResults& results);

/// True if two candidates share the same undiacritized surface.
bool has_repeated_surface(std::span<const CandidateTarget> candidates);

ContextAnnotation annotate_context(std::string context_id, std::string lemma_key, std::string context_text,
                                   const LemmaTable& table);

/// One annotation per distinct context_id, sorted by context_id.
std::vector<ContextAnnotation> auto_annotate(const std::vector<pairs::ContextGlossPair>& pairs,
                                             const LemmaTable& table);

/// Review-queue order: multi-occurrence first, then fewest hits on the top
/// candidate, then context_id.
void sort_review_queue(std::vector<const ContextAnnotation*>& items);

}  // namespace glosspair::annotate
