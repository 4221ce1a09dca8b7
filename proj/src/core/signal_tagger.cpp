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

#include "core/signal_tagger.hpp"

#include <algorithm>
#include <cctype>

#include "core/error.hpp"
#include "core/utf8.hpp"

namespace glosspair::tagging {
namespace {

const std::string kSepInfix = " " + std::string(kSeparator) + " ";

bool ascii_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

std::size_t count_occurrences(std::string_view hay, std::string_view needle) {
  std::size_t n = 0;
  for (auto at = hay.find(needle); at != std::string_view::npos; at = hay.find(needle, at + needle.size())) ++n;
  return n;
}

std::string rtrim(std::string s) {
  const auto cps = utf8::decode(s);
  std::size_t keep = cps.size();
  while (keep > 0 && text::is_space(cps[keep - 1])) --keep;
  return utf8::encode(std::u32string_view(cps).substr(0, keep));
}

std::string ltrim(std::string s) {
  const auto cps = utf8::decode(s);
  std::size_t skip = 0;
  while (skip < cps.size() && text::is_space(cps[skip])) ++skip;
  return utf8::encode(std::u32string_view(cps).substr(skip));
}

// Removes the last whitespace-delimited token. Returns false if none is left.
bool drop_last_token(std::string& s) {
  auto cps = utf8::decode(s);
  std::size_t end = cps.size();
  while (end > 0 && text::is_space(cps[end - 1])) --end;
  if (end == 0) return false;
  std::size_t begin = end;
  while (begin > 0 && !text::is_space(cps[begin - 1])) --begin;
  cps.resize(begin);
  s = rtrim(utf8::encode(cps));
  return true;
}

bool drop_first_token(std::string& s) {
  auto cps = utf8::decode(s);
  std::size_t begin = 0;
  while (begin < cps.size() && text::is_space(cps[begin])) ++begin;
  if (begin == cps.size()) return false;
  std::size_t end = begin;
  while (end < cps.size() && !text::is_space(cps[end])) ++end;
  s = ltrim(utf8::encode(std::u32string_view(cps).substr(end)));
  return true;
}

struct Parts {
  std::string before;  // context text ahead of the target
  std::string core;    // target, with marks when the variation has them
  std::string after;
  std::string head;    // "<target> :" or empty
  std::string body;    // gloss

  std::string assemble() const {
    std::string gloss = head.empty() ? body : (body.empty() ? head : head + " " + body);
    return before + core + after + kSepInfix + gloss;
  }
};

}  // namespace

std::string SignalVariation::name() const {
  switch (id) {
    case VariationId::V1: return "v1";
    case VariationId::V2: return "v2";
    case VariationId::V3: return "v3";
    case VariationId::V4: return "v4";
  }
  return "?";
}

const SignalVariation& SignalVariation::get(VariationId id) {
  static const SignalVariation v1{VariationId::V1, "", "", false};
  static const SignalVariation v2{VariationId::V2, "'", "'", true};
  static const SignalVariation v3{VariationId::V3, "[UNUSED0]", "[UNUSED0]", true};
  static const SignalVariation v4{VariationId::V4, "[UNUSED0]", "[UNUSED1]", true};
  switch (id) {
    case VariationId::V1: return v1;
    case VariationId::V2: return v2;
    case VariationId::V3: return v3;
    case VariationId::V4: return v4;
  }
  return v1;
}

const SignalVariation& SignalVariation::parse(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "v1") return get(VariationId::V1);
  if (lower == "v2") return get(VariationId::V2);
  if (lower == "v3") return get(VariationId::V3);
  if (lower == "v4") return get(VariationId::V4);
  throw Error(ErrorCode::Config, "unknown signal variation '" + std::string(name) + "' (expected v1..v4)");
}

std::size_t proxy_token_count(std::string_view sequence) {
  std::size_t n = 0;
  bool in_token = false;
  for (char32_t cp : utf8::decode(sequence)) {
    const bool space = text::is_space(cp);
    if (!space && !in_token) ++n;
    in_token = !space;
  }
  return n + kEncoderSpecials;
}

TaggedInstance render(const pairs::ContextGlossPair& pair, const annotate::ContextAnnotation& annotation,
                      const SignalVariation& variation, const text::NormProfile& profile, std::size_t max_len) {
  if (max_len < kMinMaxLen) {
    throw Error(ErrorCode::InvalidArgument, "max_len must be at least " + std::to_string(kMinMaxLen));
  }
  if (annotation.status == annotate::Status::Pending || !annotation.chosen_index) {
    throw Error(ErrorCode::Unannotated, "context " + pair.context_id + " has no target annotation");
  }
  if (pair.context_text.find(kSeparator) != std::string::npos || pair.gloss_text.find(kSeparator) != std::string::npos) {
    throw Error(ErrorCode::Data, "pair " + pair.pair_id + " already contains " + std::string(kSeparator));
  }
  const auto tokens = text::tokenize(pair.context_text);
  const std::size_t chosen = *annotation.chosen_index;
  if (chosen >= tokens.size()) {
    throw Error(ErrorCode::OutOfRange, "context " + pair.context_id + ": chosen_index " + std::to_string(chosen) +
                                           " outside " + std::to_string(tokens.size()) + " tokens");
  }
  const text::Token& t = tokens[chosen];
  const std::string_view ctx = pair.context_text;

  Parts parts;
  parts.before = profile.apply(ctx.substr(0, t.byte_offset));
  const std::string target = profile.apply(std::string_view(t.text));
  parts.after = profile.apply(ctx.substr(t.byte_offset + t.byte_length));
  parts.body = profile.apply(std::string_view(pair.gloss_text));
  if (target.empty()) throw Error(ErrorCode::Data, "target token of " + pair.context_id + " is empty after normalization");
  parts.core = variation.has_marks() ? variation.open_mark + " " + target + " " + variation.close_mark : target;
  if (variation.gloss_prefix) parts.head = target + " :";

  TaggedInstance inst;
  inst.pair_id = pair.pair_id;
  inst.label = pair.label;
  inst.sequence = parts.assemble();
  inst.token_budget_used = proxy_token_count(inst.sequence);

  // Gloss tail first, then context tail, then context head; the target, its
  // marks and the gloss prefix are never dropped.
  while (inst.token_budget_used > max_len) {
    const bool dropped = drop_last_token(parts.body) || drop_last_token(parts.after) || drop_first_token(parts.before);
    if (!dropped) {
      throw Error(ErrorCode::Data, "pair " + pair.pair_id + " cannot fit in " + std::to_string(max_len) + " tokens");
    }
    inst.truncated = true;
    inst.sequence = parts.assemble();
    inst.token_budget_used = proxy_token_count(inst.sequence);
  }
  return inst;
}

CorpusResult render_corpus(const std::vector<pairs::ContextGlossPair>& pairs,
                           const std::map<std::string, annotate::ContextAnnotation>& annotations,
                           const SignalVariation& variation, const text::NormProfile& profile, std::size_t max_len) {
  std::vector<std::string> missing;
  for (const auto& p : pairs) {
    const auto it = annotations.find(p.context_id);
    if (it == annotations.end() || it->second.status == annotate::Status::Pending || !it->second.chosen_index) {
      if (std::find(missing.begin(), missing.end(), p.context_id) == missing.end()) missing.push_back(p.context_id);
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) list += (list.empty() ? "" : ",") + id;
    throw Error(ErrorCode::Unannotated, std::to_string(missing.size()) + " unannotated contexts: " + list);
  }
  CorpusResult out;
  out.instances.reserve(pairs.size());
  for (const auto& p : pairs) {
    out.instances.push_back(render(p, annotations.at(p.context_id), variation, profile, max_len));
    if (out.instances.back().truncated) ++out.truncated;
  }
  return out;
}

std::pair<std::string, std::string> strip_signals(const TaggedInstance& instance, const SignalVariation& variation) {
  const std::string& seq = instance.sequence;
  if (count_occurrences(seq, kSeparator) != 1 || count_occurrences(seq, kSepInfix) != 1) {
    throw Error(ErrorCode::Format, "sequence of " + instance.pair_id + " must contain exactly one " + std::string(kSeparator));
  }
  const auto sep = seq.find(kSepInfix);
  std::string context = seq.substr(0, sep);
  std::string gloss = seq.substr(sep + kSepInfix.size());
  if (!variation.gloss_prefix) return {context, gloss};

  std::string target;
  if (const auto colon = gloss.find(" : "); colon != std::string::npos) {
    target = gloss.substr(0, colon);
    gloss = gloss.substr(colon + 3);
  } else if (gloss.size() >= 2 && gloss.compare(gloss.size() - 2, 2, " :") == 0) {
    target = gloss.substr(0, gloss.size() - 2);
    gloss.clear();
  } else {
    throw Error(ErrorCode::Format, "gloss of " + instance.pair_id + " lacks the target prefix");
  }
  if (target.empty() || std::any_of(target.begin(), target.end(), ascii_space)) {
    throw Error(ErrorCode::Format, "malformed target prefix in " + instance.pair_id);
  }
  if (variation.has_marks()) {
    const std::string marked = variation.open_mark + " " + target + " " + variation.close_mark;
    const auto at = context.find(marked);
    if (at == std::string::npos) throw Error(ErrorCode::Format, "marked target not found in " + instance.pair_id);
    context.replace(at, marked.size(), target);
  }
  return {context, gloss};
}

}  // namespace glosspair::tagging
