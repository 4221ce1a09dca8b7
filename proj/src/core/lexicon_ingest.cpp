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

#include "core/lexicon_ingest.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_map>

#include "core/arabic_text.hpp"
#include "core/error.hpp"
#include "core/utf8.hpp"

namespace glosspair::lexicon {
namespace {

constexpr std::string_view kBom = "\xEF\xBB\xBF";

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

bool valid_lexicon_id(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '.' || c == '-';
  });
}

// Collapses whitespace runs to one ASCII space and trims both ends.
std::string squeeze(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char32_t cp : utf8::decode(s)) {
    if (text::is_space(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    utf8::append(out, cp);
  }
  return out;
}

std::string trim_ascii(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return std::string(s);
}

std::string apply_cleanup(std::string s, const std::vector<CleanupRule>& rules) {
  for (const auto& r : rules) {
    s = std::regex_replace(s, std::regex(r.pattern), r.replacement);
  }
  return squeeze(s);
}

bool contains(std::string_view haystack, std::string_view needle) {
  return !needle.empty() && haystack.find(needle) != std::string_view::npos;
}

bool any_sense_marker(std::string_view text, const ParserSpec& spec) {
  return std::any_of(spec.sense_split_markers.begin(), spec.sense_split_markers.end(),
                     [&](const std::string& m) { return contains(text, m); });
}

bool has_context_region(std::string_view text, const ParserSpec& spec) {
  return spec.uses_delimiters() ? contains(text, spec.context_open) : contains(text, spec.context_prefix);
}

// Splits on the earliest occurrence of any sense marker, longest marker first
// on ties. Blank pieces are dropped.
std::vector<std::string> split_senses(std::string_view text, const std::vector<std::string>& markers) {
  std::vector<std::string> pieces;
  std::size_t pos = 0;
  while (true) {
    std::size_t best = std::string_view::npos;
    std::size_t best_len = 0;
    for (const auto& m : markers) {
      const auto at = text.find(m, pos);
      if (at == std::string_view::npos) continue;
      if (at < best || (at == best && m.size() > best_len)) {
        best = at;
        best_len = m.size();
      }
    }
    const std::string_view piece = text.substr(pos, best == std::string_view::npos ? std::string_view::npos : best - pos);
    if (!is_blank(piece)) pieces.emplace_back(piece);
    if (best == std::string_view::npos) break;
    pos = best + best_len;
  }
  return pieces;
}

struct Segment {
  std::string gloss;
  std::vector<std::string> contexts;
};

Segment parse_delimited(std::string_view seg, const ParserSpec& spec) {
  const std::string& open = spec.context_open;
  const std::string& close = spec.context_close;
  Segment out;
  std::string gloss;
  std::size_t pos = 0;
  while (true) {
    const auto o = seg.find(open, pos);
    const auto c = seg.find(close, pos);
    if (open != close && c != std::string_view::npos && (o == std::string_view::npos || c < o)) {
      throw Error(ErrorCode::Parse, "context close delimiter without matching open");
    }
    if (o == std::string_view::npos) {
      gloss.append(seg.substr(pos));
      break;
    }
    gloss.append(seg.substr(pos, o - pos));
    gloss.push_back(' ');
    const std::size_t body = o + open.size();
    const auto end = seg.find(close, body);
    if (end == std::string_view::npos) {
      throw Error(ErrorCode::Parse, "context open delimiter without matching close");
    }
    if (open != close) {
      const auto nested = seg.find(open, body);
      if (nested != std::string_view::npos && nested < end) {
        throw Error(ErrorCode::Parse, "nested context delimiters");
      }
    }
    out.contexts.emplace_back(seg.substr(body, end - body));
    pos = end + close.size();
  }
  out.gloss = std::move(gloss);
  return out;
}

Segment parse_prefixed(std::string_view seg, const ParserSpec& spec) {
  Segment out;
  const std::string& prefix = spec.context_prefix;
  auto at = seg.find(prefix);
  out.gloss = std::string(seg.substr(0, at));
  while (at != std::string_view::npos) {
    const std::size_t body = at + prefix.size();
    const auto next = seg.find(prefix, body);
    out.contexts.emplace_back(seg.substr(body, next == std::string_view::npos ? std::string_view::npos : next - body));
    at = next;
  }
  return out;
}

std::vector<std::string> all_markers(const ParserSpec& spec) {
  std::vector<std::string> m = spec.sense_split_markers;
  for (const std::string* s : {&spec.context_open, &spec.context_close, &spec.context_prefix}) {
    if (!s->empty()) m.push_back(*s);
  }
  return m;
}

Reject make_reject(std::string stage, std::string reason, const SenseRecord& s, std::string detail) {
  return Reject{std::move(stage), std::move(reason), s.lexicon_id, s.lemma_diacritized, 0, std::move(detail)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Loading

std::string unescape_field(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] == '\\' && i + 1 < field.size()) {
      const char n = field[i + 1];
      if (n == 't') { out.push_back('\t'); ++i; continue; }
      if (n == 'n') { out.push_back('\n'); ++i; continue; }
      if (n == '\\') { out.push_back('\\'); ++i; continue; }
    }
    out.push_back(field[i]);
  }
  return out;
}

LoadResult parse_definitions(std::string_view content) {
  if (content.substr(0, kBom.size()) == kBom) content.remove_prefix(kBom.size());

  LoadResult result;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!content.empty()) {
    const auto nl = content.find('\n');
    std::string_view line = content.substr(0, nl);
    content = nl == std::string_view::npos ? std::string_view{} : content.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (!header_seen) {
      if (line != kDumpHeader) {
        throw Error(ErrorCode::Format, "dump header mismatch: expected '" +
                                           std::string(kDumpHeader) + "' (tab-separated)");
      }
      header_seen = true;
      continue;
    }
    if (is_blank(line)) continue;

    auto reject = [&](std::string reason, std::string detail, std::string lexicon = {}, std::string lemma = {}) {
      result.rejects.push_back(
          Reject{"load", std::move(reason), std::move(lexicon), std::move(lemma), line_no, std::move(detail)});
    };

    if (!utf8::is_valid(line)) {
      reject("INVALID_UTF8", "line is not valid UTF-8");
      continue;
    }
    const auto cols = split_tabs(line);
    if (cols.size() != 3) {
      reject("MALFORMED_COLUMNS", "expected 3 columns, found " + std::to_string(cols.size()));
      continue;
    }
    LexiconDefinition def;
    def.lexicon_id = trim_ascii(cols[0]);
    def.lemma_diacritized = trim_ascii(unescape_field(cols[1]));
    def.raw_text = unescape_field(cols[2]);
    def.line = line_no;
    if (def.lexicon_id.empty() || def.lemma_diacritized.empty()) {
      reject("MISSING_FIELD", "lexicon_id and lemma_diacritized are required", def.lexicon_id, def.lemma_diacritized);
      continue;
    }
    if (!valid_lexicon_id(def.lexicon_id)) {
      reject("BAD_LEXICON_ID", "lexicon_id must match [A-Za-z0-9_.-]+", def.lexicon_id, def.lemma_diacritized);
      continue;
    }
    if (is_blank(def.raw_text)) {
      reject("EMPTY_DEFINITION", "definition_text is empty", def.lexicon_id, def.lemma_diacritized);
      continue;
    }
    def.lemma_key = text::undiacritize(def.lemma_diacritized);
    result.definitions.push_back(std::move(def));
  }
  if (!header_seen) throw Error(ErrorCode::Format, "dump is empty: missing header row");
  return result;
}

LoadResult load_definitions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read lexicon dump " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_definitions(ss.str());
}

// ---------------------------------------------------------------------------
// Parser specs

void ParserSpec::validate() const {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::Config, "parser spec '" + lexicon_id + "': " + why);
  };
  if (lexicon_id.empty()) fail("lexicon_id is required");
  for (const auto& r : cleanup_rules) {
    try {
      std::regex re(r.pattern);
    } catch (const std::regex_error& e) {
      fail("bad cleanup pattern '" + r.pattern + "': " + e.what());
    }
  }
  if (pre_structured) return;
  if (context_open.empty() == context_prefix.empty()) {
    fail("exactly one of context_markers or context_prefix must be given");
  }
  if (!context_open.empty() && context_close.empty()) fail("context_markers needs both open and close");
  // Identical open/close delimiters (e.g. a plain quote) count as one marker.
  std::vector<std::string> markers = sense_split_markers;
  if (uses_delimiters()) {
    markers.push_back(context_open);
    if (context_close != context_open) markers.push_back(context_close);
  } else {
    markers.push_back(context_prefix);
  }
  for (std::size_t i = 0; i < markers.size(); ++i) {
    if (markers[i].empty()) fail("empty marker");
    for (std::size_t j = i + 1; j < markers.size(); ++j) {
      if (markers[i].find(markers[j]) != std::string::npos || markers[j].find(markers[i]) != std::string::npos) {
        fail("markers '" + markers[i] + "' and '" + markers[j] + "' overlap");
      }
    }
  }
}

ParserSpecFile parse_parser_specs(std::string_view yaml) {
  ParserSpecFile file;
  std::vector<YAML::Node> docs;
  try {
    docs = YAML::LoadAll(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::Config, std::string("parser spec file: ") + e.what());
  }
  for (const auto& doc : docs) {
    if (!doc || doc.IsNull()) continue;
    try {
      ParserSpec spec;
      spec.lexicon_id = doc["lexicon_id"].as<std::string>("");
      spec.pre_structured = doc["pre_structured"].as<bool>(false);
      if (const auto m = doc["sense_markers"]) {
        for (const auto& v : m) spec.sense_split_markers.push_back(v.as<std::string>());
      }
      if (const auto cm = doc["context_markers"]) {
        spec.context_open = cm["open"].as<std::string>("");
        spec.context_close = cm["close"].as<std::string>("");
      }
      spec.context_prefix = doc["context_prefix"].as<std::string>("");
      if (const auto rules = doc["cleanup_rules"]) {
        for (const auto& r : rules) {
          spec.cleanup_rules.push_back({r["pattern"].as<std::string>(), r["replace"].as<std::string>("")});
        }
      }
      spec.validate();
      if (file.specs.count(spec.lexicon_id) != 0) {
        throw Error(ErrorCode::Config, "duplicate parser spec for lexicon '" + spec.lexicon_id + "'");
      }
      file.order.push_back(spec.lexicon_id);
      file.specs.emplace(spec.lexicon_id, std::move(spec));
    } catch (const YAML::Exception& e) {
      throw Error(ErrorCode::Config, std::string("parser spec document: ") + e.what());
    }
  }
  return file;
}

ParserSpecFile load_parser_specs(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read parser spec file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_parser_specs(ss.str());
}

// ---------------------------------------------------------------------------
// Candidate selection and extraction

const char* exclusion_reason_name(ExclusionReason r) noexcept {
  return r == ExclusionReason::NoMarkers ? "NO_MARKERS" : "NO_CONTEXT";
}

CandidateSelection select_candidates(const std::vector<LexiconDefinition>& defs, const ParserSpecs& specs) {
  CandidateSelection out;
  for (const auto& def : defs) {
    const auto it = specs.find(def.lexicon_id);
    if (it == specs.end()) {
      throw Error(ErrorCode::Config, "no parser spec for lexicon '" + def.lexicon_id + "'");
    }
    const ParserSpec& spec = it->second;
    if (spec.pre_structured) {
      const auto cols = split_tabs(def.raw_text);
      const bool has_context = std::any_of(cols.begin() + 1, cols.end(), [](auto c) { return !is_blank(c); });
      if (has_context) {
        out.candidates.push_back(def);
      } else {
        out.excluded.push_back({def, ExclusionReason::NoContext});
      }
      continue;
    }
    const bool context = has_context_region(def.raw_text, spec);
    const bool sense = any_sense_marker(def.raw_text, spec);
    if (context) {
      out.candidates.push_back(def);
    } else {
      out.excluded.push_back({def, sense ? ExclusionReason::NoContext : ExclusionReason::NoMarkers});
    }
  }
  return out;
}

std::vector<SenseRecord> extract_senses(const LexiconDefinition& def, const ParserSpec& spec) {
  std::vector<Segment> segments;
  if (spec.pre_structured) {
    const auto cols = split_tabs(def.raw_text);
    Segment seg;
    seg.gloss = std::string(cols.front());
    for (std::size_t i = 1; i < cols.size(); ++i) {
      if (!is_blank(cols[i])) seg.contexts.emplace_back(cols[i]);
    }
    segments.push_back(std::move(seg));
  } else {
    for (const auto& piece : split_senses(def.raw_text, spec.sense_split_markers)) {
      segments.push_back(spec.uses_delimiters() ? parse_delimited(piece, spec) : parse_prefixed(piece, spec));
    }
  }

  const auto markers = spec.pre_structured ? std::vector<std::string>{} : all_markers(spec);
  std::vector<SenseRecord> out;
  std::size_t k = 0;
  for (auto& seg : segments) {
    SenseRecord rec;
    rec.gloss = apply_cleanup(seg.gloss, spec.cleanup_rules);
    for (const auto& c : seg.contexts) {
      std::string ctx = apply_cleanup(c, spec.cleanup_rules);
      if (!ctx.empty()) rec.contexts.push_back(std::move(ctx));
    }
    if (rec.gloss.empty() && rec.contexts.empty()) continue;
    for (const auto& m : markers) {
      bool leaked = contains(rec.gloss, m);
      for (const auto& c : rec.contexts) leaked = leaked || contains(c, m);
      if (leaked) throw Error(ErrorCode::Parse, "marker '" + m + "' survives extraction");
    }
    rec.sense_id = def.lexicon_id + "-L" + std::to_string(def.line) + "-S" + std::to_string(++k);
    rec.lemma_key = def.lemma_key;
    rec.lemma_diacritized = def.lemma_diacritized;
    rec.lexicon_id = def.lexicon_id;
    out.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Selection criteria

bool satisfies_invariants(const SenseRecord& s) {
  if (s.contexts.empty() || text::word_count(s.gloss) < 2) return false;
  for (const auto& c : s.contexts) {
    if (text::word_count(c) < 2) return false;
  }
  const auto lemma = utf8::decode(trim_ascii(s.lemma_diacritized));
  if (lemma.empty() || std::any_of(lemma.begin(), lemma.end(), text::is_space)) return false;
  return s.lemma_key == text::undiacritize(s.lemma_diacritized);
}

SelectionResult apply_selection_criteria(std::vector<SenseRecord> senses, const std::vector<std::string>& lexicon_rank) {
  SelectionResult result;
  auto& dropped = result.dropped;

  // (a) one-word glosses and contexts.
  std::vector<SenseRecord> kept;
  for (auto& s : senses) {
    if (text::word_count(s.gloss) < 2) {
      dropped.push_back(make_reject("filter", "SHORT_GLOSS", s, s.sense_id));
      continue;
    }
    std::vector<std::string> ctx;
    std::set<std::string> seen;
    for (auto& c : s.contexts) {
      if (text::word_count(c) < 2) {
        dropped.push_back(make_reject("filter", "SHORT_CONTEXT", s, s.sense_id + ": " + c));
      } else if (seen.insert(c).second) {
        ctx.push_back(std::move(c));
      }
    }
    s.contexts = std::move(ctx);
    kept.push_back(std::move(s));
  }

  // Group per (lemma_key, lexicon) preserving first-seen order.
  using GroupKey = std::pair<std::string, std::string>;
  std::map<GroupKey, std::vector<SenseRecord>> groups;
  for (auto& s : kept) groups[{s.lemma_key, s.lexicon_id}].push_back(std::move(s));

  for (auto& [key, group] : groups) {
    // Exact duplicate glosses merge into the first occurrence.
    std::vector<SenseRecord> merged;
    for (auto& s : group) {
      auto it = std::find_if(merged.begin(), merged.end(), [&](const SenseRecord& m) { return m.gloss == s.gloss; });
      if (it == merged.end()) {
        merged.push_back(std::move(s));
        continue;
      }
      for (auto& c : s.contexts) {
        if (std::find(it->contexts.begin(), it->contexts.end(), c) == it->contexts.end()) {
          it->contexts.push_back(std::move(c));
        }
      }
      dropped.push_back(make_reject("filter", "DUPLICATE_GLOSS", s, s.sense_id + " merged into " + it->sense_id));
    }
    group = std::move(merged);

    // (b) every gloss of the lemma needs a context.
    const bool orphan = std::any_of(group.begin(), group.end(), [](const SenseRecord& s) { return s.contexts.empty(); });
    if (orphan) {
      for (const auto& s : group) {
        dropped.push_back(make_reject("filter", "GLOSS_WITHOUT_CONTEXT", s, s.sense_id));
      }
      group.clear();
    }
  }

  // (c) one lexicon per lemma_key: most glosses, then rank.
  auto rank_of = [&](const std::string& lexicon) {
    const auto it = std::find(lexicon_rank.begin(), lexicon_rank.end(), lexicon);
    if (it == lexicon_rank.end()) {
      throw Error(ErrorCode::Config, "lexicon '" + lexicon + "' is missing from lexicon_rank");
    }
    return static_cast<std::size_t>(it - lexicon_rank.begin());
  };
  std::map<std::string, std::string> winner;  // lemma_key -> lexicon
  for (const auto& [key, group] : groups) {
    if (group.empty()) continue;
    const auto& [lemma, lexicon] = key;
    auto it = winner.find(lemma);
    if (it == winner.end()) {
      winner.emplace(lemma, lexicon);
      continue;
    }
    const std::size_t current = groups.at({lemma, it->second}).size();
    if (group.size() > current || (group.size() == current && rank_of(lexicon) < rank_of(it->second))) {
      it->second = lexicon;
    }
  }

  for (auto& [key, group] : groups) {
    if (group.empty()) continue;
    const auto& [lemma, lexicon] = key;
    rank_of(lexicon);
    const bool selected = winner.at(lemma) == lexicon;
    for (auto& s : group) {
      if (!selected) {
        dropped.push_back(make_reject("filter", "LEXICON_NOT_SELECTED", s,
                                      s.sense_id + " lost to lexicon " + winner.at(lemma)));
        continue;
      }
      // (d) single-word lemmas only.
      const auto lemma_cps = utf8::decode(trim_ascii(s.lemma_diacritized));
      if (std::any_of(lemma_cps.begin(), lemma_cps.end(), text::is_space)) {
        dropped.push_back(make_reject("filter", "MULTI_WORD_LEMMA", s, s.sense_id));
        continue;
      }
      if (!satisfies_invariants(s)) {
        dropped.push_back(make_reject("filter", "INVARIANT_VIOLATION", s, s.sense_id));
        continue;
      }
      result.senses.push_back(std::move(s));
    }
  }

  std::sort(result.senses.begin(), result.senses.end(), [](const SenseRecord& a, const SenseRecord& b) {
    return std::tie(a.lemma_key, a.sense_id) < std::tie(b.lemma_key, b.sense_id);
  });
  return result;
}

SenseStats dataset_stats(const std::vector<SenseRecord>& senses) {
  SenseStats st;
  std::set<std::string> lemmas;
  std::set<std::string> glosses;
  std::set<std::string> contexts;
  std::size_t context_entries = 0;
  for (const auto& s : senses) {
    lemmas.insert(s.lemma_key);
    glosses.insert(s.gloss);
    for (const auto& c : s.contexts) contexts.insert(c);
    context_entries += s.contexts.size();
  }
  st.lemmas = lemmas.size();
  st.glosses = glosses.size();
  st.contexts = contexts.size();
  if (!lemmas.empty()) st.avg_glosses_per_lemma = static_cast<double>(senses.size()) / static_cast<double>(lemmas.size());
  if (!senses.empty()) st.avg_contexts_per_gloss = static_cast<double>(context_entries) / static_cast<double>(senses.size());
  return st;
}

}  // namespace glosspair::lexicon
