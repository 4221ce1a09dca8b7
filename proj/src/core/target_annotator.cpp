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

#include "core/target_annotator.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>

#include "core/error.hpp"
#include "core/utf8.hpp"

namespace glosspair::annotate {
namespace {

struct WordView {
  std::size_t index;
  const text::Token* token;
  std::string bare;  // undiacritized surface
};

std::vector<WordView> words_of(std::span<const text::Token> tokens) {
  std::vector<WordView> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!tokens[i].is_word) continue;
    std::string bare = text::undiacritize(tokens[i].text);
    if (bare.empty()) continue;
    out.push_back({i, &tokens[i], std::move(bare)});
  }
  return out;
}

CandidateTarget hit(const WordView& w, Method m) {
  CandidateTarget c;
  c.token_index = w.index;
  c.surface = w.token->text;
  c.method_hits = MethodSet(m);
  return c;
}

}  // namespace

std::size_t MethodSet::size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }

const char* method_name(Method m) noexcept {
  switch (m) {
    case Method::Substring: return "SUBSTRING";
    case Method::Cosine: return "COSINE";
    case Method::Levenshtein: return "LEVENSHTEIN";
    case Method::Lemmatizer: return "LEMMATIZER";
  }
  return "?";
}

std::optional<Method> method_from_name(std::string_view name) noexcept {
  for (Method m : kAllMethods) {
    if (name == method_name(m)) return m;
  }
  return std::nullopt;
}

const char* status_name(Status s) noexcept {
  switch (s) {
    case Status::Pending: return "PENDING";
    case Status::Auto: return "AUTO";
    case Status::Verified: return "VERIFIED";
    case Status::Corrected: return "CORRECTED";
  }
  return "?";
}

std::optional<Status> status_from_name(std::string_view name) noexcept {
  for (Status s : {Status::Pending, Status::Auto, Status::Verified, Status::Corrected}) {
    if (name == status_name(s)) return s;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

void LemmaTable::add(std::string_view surface, std::string_view lemma_key) {
  std::string s = text::undiacritize(surface);
  std::string l = text::undiacritize(lemma_key);
  if (s.empty() || l.empty()) throw Error(ErrorCode::Format, "lemma table entries must be non-empty");
  entries_[std::move(s)].insert(std::move(l));
}

const std::set<std::string>* LemmaTable::lookup(std::string_view undiacritized_surface) const {
  const auto it = entries_.find(undiacritized_surface);
  return it == entries_.end() ? nullptr : &it->second;
}

LemmaTable LemmaTable::parse(std::string_view tsv) {
  LemmaTable table;
  if (tsv.substr(0, 3) == "\xEF\xBB\xBF") tsv.remove_prefix(3);
  std::size_t line_no = 0;
  while (!tsv.empty()) {
    const auto nl = tsv.find('\n');
    std::string_view line = tsv.substr(0, nl);
    tsv = nl == std::string_view::npos ? std::string_view{} : tsv.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos) {
      throw Error(ErrorCode::Format, "lemma table line " + std::to_string(line_no) + ": expected surface<TAB>lemma_key");
    }
    table.add(line.substr(0, tab), line.substr(tab + 1));
  }
  return table;
}

LemmaTable LemmaTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read lemma table " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

// ---------------------------------------------------------------------------
// Detectors

std::vector<CandidateTarget> method_substring(std::string_view lemma_key, std::span<const text::Token> tokens) {
  std::vector<CandidateTarget> out;
  if (lemma_key.empty()) return out;
  for (const auto& w : words_of(tokens)) {
    if (w.bare.find(lemma_key) != std::string::npos) out.push_back(hit(w, Method::Substring));
  }
  return out;
}

std::optional<CandidateTarget> method_cosine(std::string_view lemma_key, std::span<const text::Token> tokens) {
  const text::CharVector lemma = text::char_vector(lemma_key);
  if (lemma.empty()) return std::nullopt;
  std::optional<CandidateTarget> best;
  for (const auto& w : words_of(tokens)) {
    const double score = text::cosine(lemma, text::char_vector(w.bare));
    if (score > kCosineThreshold && (!best || score > *best->cosine_score)) {
      best = hit(w, Method::Cosine);
      best->cosine_score = score;
    }
  }
  return best;
}

std::optional<CandidateTarget> method_levenshtein(std::string_view lemma_key, std::span<const text::Token> tokens) {
  if (lemma_key.empty()) return std::nullopt;
  const std::u32string lemma = utf8::decode(lemma_key);
  std::optional<CandidateTarget> best;
  for (const auto& w : words_of(tokens)) {
    const std::size_t d = text::levenshtein(lemma, utf8::decode(w.bare));
    if (!best || d < *best->edit_distance) {
      best = hit(w, Method::Levenshtein);
      best->edit_distance = d;
    }
  }
  return best;
}

std::vector<CandidateTarget> method_lemmatize(std::string_view lemma_key, std::span<const text::Token> tokens,
                                              const LemmaTable& table) {
  std::vector<CandidateTarget> out;
  for (const auto& w : words_of(tokens)) {
    const auto* lemmas = table.lookup(w.bare);
    if (lemmas != nullptr && lemmas->count(std::string(lemma_key)) != 0) out.push_back(hit(w, Method::Lemmatizer));
  }
  return out;
}

std::vector<CandidateTarget> method_substring(std::string_view lemma_key, std::string_view context) {
  return method_substring(lemma_key, text::tokenize(context));
}
std::optional<CandidateTarget> method_cosine(std::string_view lemma_key, std::string_view context) {
  return method_cosine(lemma_key, text::tokenize(context));
}
std::optional<CandidateTarget> method_levenshtein(std::string_view lemma_key, std::string_view context) {
  return method_levenshtein(lemma_key, text::tokenize(context));
}
std::vector<CandidateTarget> method_lemmatize(std::string_view lemma_key, std::string_view context,
                                              const LemmaTable& table) {
  return method_lemmatize(lemma_key, text::tokenize(context), table);
}

// ---------------------------------------------------------------------------
// Merging

std::vector<CandidateTarget> combine_candidates(const MethodResults& results) {
  std::map<std::size_t, CandidateTarget> merged;
  auto absorb = [&](const CandidateTarget& c) {
    auto [it, fresh] = merged.try_emplace(c.token_index, c);
    if (fresh) return;
    CandidateTarget& m = it->second;
    m.method_hits |= c.method_hits;
    if (c.cosine_score) m.cosine_score = c.cosine_score;
    if (c.edit_distance) m.edit_distance = c.edit_distance;
  };
  for (const auto& c : results.substring) absorb(c);
  if (results.cosine) absorb(*results.cosine);
  if (results.levenshtein) absorb(*results.levenshtein);
  for (const auto& c : results.lemmatizer) absorb(c);

  std::vector<CandidateTarget> out;
  out.reserve(merged.size());
  for (auto& [_, c] : merged) out.push_back(std::move(c));

  auto key = [](const CandidateTarget& c) {
    return std::make_tuple(-static_cast<long>(c.method_hits.size()), -c.cosine_score.value_or(0.0),
                           c.edit_distance.value_or(std::numeric_limits<std::size_t>::max()), c.token_index);
  };
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return out;
}

bool has_repeated_surface(std::span<const CandidateTarget> candidates) {
  std::set<std::string> seen;
  for (const auto& c : candidates) {
    if (!seen.insert(text::undiacritize(c.surface)).second) return true;
  }
  return false;
}

ContextAnnotation annotate_context(std::string context_id, std::string lemma_key, std::string context_text,
                                   const LemmaTable& table) {
  const auto tokens = text::tokenize(context_text);
  MethodResults r;
  r.substring = method_substring(lemma_key, tokens);
  r.cosine = method_cosine(lemma_key, tokens);
  r.levenshtein = method_levenshtein(lemma_key, tokens);
  r.lemmatizer = method_lemmatize(lemma_key, tokens, table);

  ContextAnnotation a;
  a.context_id = std::move(context_id);
  a.lemma_key = std::move(lemma_key);
  a.context_text = std::move(context_text);
  a.candidates = combine_candidates(r);
  a.multi_occurrence = has_repeated_surface(a.candidates);
  if (!a.candidates.empty()) {
    a.chosen_index = a.candidates.front().token_index;
    a.status = Status::Auto;
  }
  return a;
}

std::vector<ContextAnnotation> auto_annotate(const std::vector<pairs::ContextGlossPair>& pairs,
                                             const LemmaTable& table) {
  std::map<std::string, const pairs::ContextGlossPair*> contexts;
  for (const auto& p : pairs) {
    auto [it, fresh] = contexts.emplace(p.context_id, &p);
    if (!fresh && (it->second->context_text != p.context_text || it->second->lemma_key != p.lemma_key)) {
      throw Error(ErrorCode::Data, "context_id " + p.context_id + " appears with different text or lemma");
    }
  }
  std::vector<ContextAnnotation> out;
  out.reserve(contexts.size());
  for (const auto& [id, p] : contexts) out.push_back(annotate_context(id, p->lemma_key, p->context_text, table));
  return out;
}

void sort_review_queue(std::vector<const ContextAnnotation*>& items) {
  auto key = [](const ContextAnnotation* a) {
    const std::size_t hits = a->candidates.empty() ? 0 : a->candidates.front().method_hits.size();
    return std::make_tuple(a->multi_occurrence ? 0 : 1, hits, std::cref(a->context_id));
  };
  std::stable_sort(items.begin(), items.end(), [&](const auto* a, const auto* b) { return key(a) < key(b); });
}

}  // namespace glosspair::annotate
