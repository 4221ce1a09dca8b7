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

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "core/lexicon_ingest.hpp"

namespace glosspair::pairs {

enum class Label { False = 0, True = 1 };

inline const char* label_name(Label l) noexcept { return l == Label::True ? "true" : "false"; }

struct ContextGlossPair {
  std::string pair_id;
  std::string lemma_key;
  std::string context_id;
  std::string context_text;
  std::string gloss_id;
  std::string gloss_text;
  Label label = Label::False;

  bool operator==(const ContextGlossPair&) const = default;
};

/// Content hash of (lemma_key, context_id, gloss_id, label); 16 hex digits.
std::string make_pair_id(const std::string& lemma_key, const std::string& context_id,
                         const std::string& gloss_id, Label label);

/// Context ids are "<sense_id>-C<k>" with k counted from 1.
std::string make_context_id(const std::string& sense_id, std::size_t k);

/// One True pair per context of every sense, sorted by pair_id.
std::vector<ContextGlossPair> build_true_pairs(const std::vector<lexicon::SenseRecord>& senses);

/// Cross-relates each lemma's contexts with its other glosses. Gloss identity
/// is the gloss_id, never the text. Sorted by pair_id. Throws Error(Data) if
/// any input pair is labeled False.
std::vector<ContextGlossPair> build_false_pairs(const std::vector<ContextGlossPair>& true_pairs);

struct PairStats {
  std::size_t true_pairs = 0;
  std::size_t false_pairs = 0;
  std::size_t total() const noexcept { return true_pairs + false_pairs; }
};

PairStats pair_stats(const std::vector<ContextGlossPair>& pairs);

void sort_by_pair_id(std::vector<ContextGlossPair>& pairs);

}  // namespace glosspair::pairs
