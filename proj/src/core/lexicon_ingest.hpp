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

// Lexicon dump ingestion: load raw definitions, pick parseable candidates,
// split them into glosses and contexts, then filter down to the sense
// inventory the pair builder consumes.

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace glosspair::lexicon {

struct LexiconDefinition {
  std::string lexicon_id;
  std::string lemma_diacritized;
  std::string lemma_key;  // undiacritize(lemma_diacritized)
  std::string raw_text;
  std::size_t line = 0;   // 1-based line in the source dump
};

/// One entry of the rejects sidecar. `stage` is load, select, extract or
/// filter; `reason` is a stable upper-case code.
struct Reject {
  std::string stage;
  std::string reason;
  std::string lexicon_id;
  std::string lemma;
  std::size_t line = 0;
  std::string detail;
};

struct LoadResult {
  std::vector<LexiconDefinition> definitions;
  std::vector<Reject> rejects;
};

inline constexpr std::string_view kDumpHeader = "lexicon_id\tlemma_diacritized\tdefinition_text";

/// Throws Error(Io) if unreadable and Error(Format) on a header mismatch.
LoadResult load_definitions(const std::filesystem::path& path);
LoadResult parse_definitions(std::string_view content);

/// Reverses the dump's field escaping: backslash-t, backslash-n, double backslash.
std::string unescape_field(std::string_view field);

struct CleanupRule {
  std::string pattern;  // ECMAScript regex over UTF-8 bytes
  std::string replacement;
};

struct ParserSpec {
  std::string lexicon_id;
  bool pre_structured = false;
  std::vector<std::string> sense_split_markers;
  // Either an open/close delimiter pair or a prefix introduces a context.
  std::string context_open;
  std::string context_close;
  std::string context_prefix;
  std::vector<CleanupRule> cleanup_rules;

  bool uses_delimiters() const noexcept { return !context_open.empty(); }
  /// Throws Error(Config) on empty or overlapping markers.
  void validate() const;
};

using ParserSpecs = std::map<std::string, ParserSpec>;

struct ParserSpecFile {
  ParserSpecs specs;
  std::vector<std::string> order;  // document order, the default lexicon rank
};

/// Multi-document YAML, one document per lexicon.
ParserSpecFile load_parser_specs(const std::filesystem::path& path);
ParserSpecFile parse_parser_specs(std::string_view yaml);

enum class ExclusionReason { NoMarkers, NoContext };
const char* exclusion_reason_name(ExclusionReason r) noexcept;

struct Exclusion {
  LexiconDefinition definition;
  ExclusionReason reason;
};

struct CandidateSelection {
  std::vector<LexiconDefinition> candidates;
  std::vector<Exclusion> excluded;
};

/// Throws Error(Config) when a definition's lexicon has no ParserSpec.
CandidateSelection select_candidates(const std::vector<LexiconDefinition>& defs,
                                     const ParserSpecs& specs);

struct SenseRecord {
  std::string sense_id;
  std::string lemma_key;
  std::string lemma_diacritized;
  std::string gloss;
  std::vector<std::string> contexts;
  std::string lexicon_id;

  bool operator==(const SenseRecord&) const = default;
};

/// Throws Error(Parse) on unbalanced context delimiters. Glosses without any
/// context are kept so the selection step can see them.
std::vector<SenseRecord> extract_senses(const LexiconDefinition& def, const ParserSpec& spec);

struct SelectionResult {
  std::vector<SenseRecord> senses;
  std::vector<Reject> dropped;
};

/// Applies, in order: drop one-word glosses and contexts; drop every gloss of
/// a lemma (per lexicon) if any gloss is left without contexts; keep only the
/// lexicon with the most glosses per lemma_key (ties go to the earlier entry
/// of `lexicon_rank`); drop multi-word lemmas. Exact duplicate glosses
/// within one lemma and lexicon are merged before counting.
SelectionResult apply_selection_criteria(std::vector<SenseRecord> senses,
                                         const std::vector<std::string>& lexicon_rank);

/// Gloss and every context have >= 2 words, contexts non-empty, single-word lemma.
bool satisfies_invariants(const SenseRecord& s);

struct SenseStats {
  std::size_t lemmas = 0;
  std::size_t glosses = 0;
  std::size_t contexts = 0;
  double avg_glosses_per_lemma = 0.0;
  double avg_contexts_per_gloss = 0.0;
};

SenseStats dataset_stats(const std::vector<SenseRecord>& senses);

}  // namespace glosspair::lexicon
