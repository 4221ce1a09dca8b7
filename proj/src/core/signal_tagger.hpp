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

// Renders context-gloss pairs into "<context> [SEP] <gloss>" sequences, with
// optional marks around the target word and a "<target> : " gloss prefix.

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/arabic_text.hpp"
#include "core/pair_builder.hpp"
#include "core/target_annotator.hpp"

namespace glosspair::tagging {

inline constexpr std::string_view kSeparator = "[SEP]";
inline constexpr std::size_t kDefaultMaxLen = 512;
inline constexpr std::size_t kMinMaxLen = 16;
/// Specials the encoder adds around a pair ([CLS] and the closing [SEP]).
inline constexpr std::size_t kEncoderSpecials = 2;

enum class VariationId { V1, V2, V3, V4 };

struct SignalVariation {
  VariationId id;
  std::string open_mark;
  std::string close_mark;
  bool gloss_prefix = false;

  std::string name() const;  // "v1".."v4"
  bool has_marks() const noexcept { return !open_mark.empty(); }

  static const SignalVariation& get(VariationId id);
  /// Accepts v1..v4 (case-insensitive). Throws Error(Config) otherwise.
  static const SignalVariation& parse(std::string_view name);
};

struct TaggedInstance {
  std::string pair_id;
  std::string sequence;
  pairs::Label label = pairs::Label::False;
  bool truncated = false;
  std::size_t token_budget_used = 0;

  bool operator==(const TaggedInstance&) const = default;
};

/// Whitespace-token count of the sequence plus the encoder specials.
std::size_t proxy_token_count(std::string_view sequence);

/// Throws Error(Unannotated) for a PENDING annotation, Error(OutOfRange) for a
/// bad chosen_index and Error(Data) if the texts already contain "[SEP]".
TaggedInstance render(const pairs::ContextGlossPair& pair, const annotate::ContextAnnotation& annotation,
                      const SignalVariation& variation, const text::NormProfile& profile,
                      std::size_t max_len = kDefaultMaxLen);

struct CorpusResult {
  std::vector<TaggedInstance> instances;  // input order
  std::size_t truncated = 0;
};

/// Throws Error(Unannotated) listing every context_id without a usable
/// annotation before rendering anything.
CorpusResult render_corpus(const std::vector<pairs::ContextGlossPair>& pairs,
                           const std::map<std::string, annotate::ContextAnnotation>& annotations,
                           const SignalVariation& variation, const text::NormProfile& profile,
                           std::size_t max_len = kDefaultMaxLen);

/// Inverse of render for untruncated instances: (context, gloss) without
/// marks or prefix. Throws Error(Format) on malformed sequences.
std::pair<std::string, std::string> strip_signals(const TaggedInstance& instance, const SignalVariation& variation);

}  // namespace glosspair::tagging
