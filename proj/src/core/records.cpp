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

#include "core/records.hpp"

#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace glosspair::records {
namespace {

template <class T>
T field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(ErrorCode::Format, std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::Format, std::string("field '") + name + "' has the wrong type");
  }
}

template <class T>
std::optional<T> optional_field(const Json& j, const char* name) {
  if (!j.contains(name) || j.at(name).is_null()) return std::nullopt;
  return field<T>(j, name);
}

template <class T>
Json nullable(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json metrics_json(const eval::ClassMetrics& m) {
  return Json{{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

eval::ClassMetrics metrics_from_json(const Json& j) {
  return {field<double>(j, "precision"), field<double>(j, "recall"), field<double>(j, "f1")};
}

}  // namespace

pairs::Label label_from_json(const Json& j) {
  if (j.is_boolean()) return j.get<bool>() ? pairs::Label::True : pairs::Label::False;
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "true" || s == "True") return pairs::Label::True;
    if (s == "false" || s == "False") return pairs::Label::False;
  }
  throw Error(ErrorCode::Format, "label must be \"true\" or \"false\"");
}

Json to_json(const lexicon::SenseRecord& s) {
  return Json{{"sense_id", s.sense_id},   {"lemma_key", s.lemma_key}, {"lemma_diacritized", s.lemma_diacritized},
              {"gloss", s.gloss},         {"contexts", s.contexts},   {"lexicon_id", s.lexicon_id}};
}

lexicon::SenseRecord sense_from_json(const Json& j) {
  lexicon::SenseRecord s;
  s.sense_id = field<std::string>(j, "sense_id");
  s.lemma_key = field<std::string>(j, "lemma_key");
  s.lemma_diacritized = field<std::string>(j, "lemma_diacritized");
  s.gloss = field<std::string>(j, "gloss");
  s.contexts = field<std::vector<std::string>>(j, "contexts");
  s.lexicon_id = field<std::string>(j, "lexicon_id");
  return s;
}

Json to_json(const lexicon::Reject& r) {
  return Json{{"stage", r.stage},   {"reason", r.reason}, {"lexicon_id", r.lexicon_id},
              {"lemma", r.lemma},   {"line", r.line},     {"detail", r.detail}};
}

Json to_json(const lexicon::SenseStats& s) {
  return Json{{"lemmas", s.lemmas},
              {"glosses", s.glosses},
              {"contexts", s.contexts},
              {"avg_glosses_per_lemma", s.avg_glosses_per_lemma},
              {"avg_contexts_per_gloss", s.avg_contexts_per_gloss}};
}

Json to_json(const pairs::ContextGlossPair& p) {
  return Json{{"pair_id", p.pair_id},
              {"lemma_key", p.lemma_key},
              {"context_id", p.context_id},
              {"context_text", p.context_text},
              {"gloss_id", p.gloss_id},
              {"gloss_text", p.gloss_text},
              {"label", pairs::label_name(p.label)}};
}

pairs::ContextGlossPair pair_from_json(const Json& j) {
  pairs::ContextGlossPair p;
  p.pair_id = field<std::string>(j, "pair_id");
  p.lemma_key = field<std::string>(j, "lemma_key");
  p.context_id = field<std::string>(j, "context_id");
  p.context_text = field<std::string>(j, "context_text");
  p.gloss_id = field<std::string>(j, "gloss_id");
  p.gloss_text = field<std::string>(j, "gloss_text");
  if (!j.contains("label")) throw Error(ErrorCode::Format, "missing field 'label'");
  p.label = label_from_json(j.at("label"));
  return p;
}

Json to_json(const pairs::PairStats& s) {
  return Json{{"true_pairs", s.true_pairs}, {"false_pairs", s.false_pairs}, {"total", s.total()}};
}

Json to_json(const annotate::CandidateTarget& c) {
  Json hits = Json::array();
  for (auto m : annotate::kAllMethods) {
    if (c.method_hits.contains(m)) hits.push_back(annotate::method_name(m));
  }
  return Json{{"token_index", c.token_index},
              {"surface", c.surface},
              {"method_hits", hits},
              {"cosine_score", nullable(c.cosine_score)},
              {"edit_distance", nullable(c.edit_distance)}};
}

Json to_json(const annotate::AuditEntry& a) {
  return Json{{"revision", a.revision},
              {"action", a.action},
              {"reviewer", a.reviewer},
              {"previous_index", nullable(a.previous_index)},
              {"previous_status", annotate::status_name(a.previous_status)},
              {"new_index", nullable(a.new_index)}};
}

Json to_json(const annotate::ContextAnnotation& a) {
  Json candidates = Json::array();
  for (const auto& c : a.candidates) candidates.push_back(to_json(c));
  Json audit = Json::array();
  for (const auto& e : a.audit) audit.push_back(to_json(e));
  return Json{{"context_id", a.context_id},
              {"lemma_key", a.lemma_key},
              {"context_text", a.context_text},
              {"candidates", candidates},
              {"chosen_index", nullable(a.chosen_index)},
              {"status", annotate::status_name(a.status)},
              {"multi_occurrence", a.multi_occurrence},
              {"revision", a.revision},
              {"audit", audit}};
}

annotate::ContextAnnotation annotation_from_json(const Json& j) {
  annotate::ContextAnnotation a;
  a.context_id = field<std::string>(j, "context_id");
  a.lemma_key = field<std::string>(j, "lemma_key");
  a.context_text = field<std::string>(j, "context_text");
  for (const auto& cj : field<Json>(j, "candidates")) {
    annotate::CandidateTarget c;
    c.token_index = field<std::size_t>(cj, "token_index");
    c.surface = field<std::string>(cj, "surface");
    for (const auto& name : field<std::vector<std::string>>(cj, "method_hits")) {
      const auto m = annotate::method_from_name(name);
      if (!m) throw Error(ErrorCode::Format, "unknown method '" + name + "'");
      c.method_hits.insert(*m);
    }
    c.cosine_score = optional_field<double>(cj, "cosine_score");
    c.edit_distance = optional_field<std::size_t>(cj, "edit_distance");
    a.candidates.push_back(std::move(c));
  }
  a.chosen_index = optional_field<std::size_t>(j, "chosen_index");
  const auto status = annotate::status_from_name(field<std::string>(j, "status"));
  if (!status) throw Error(ErrorCode::Format, "unknown annotation status");
  a.status = *status;
  a.multi_occurrence = optional_field<bool>(j, "multi_occurrence").value_or(false);
  a.revision = optional_field<std::uint64_t>(j, "revision").value_or(0);
  if (j.contains("audit")) {
    for (const auto& ej : j.at("audit")) {
      annotate::AuditEntry e;
      e.revision = field<std::uint64_t>(ej, "revision");
      e.action = field<std::string>(ej, "action");
      e.reviewer = field<std::string>(ej, "reviewer");
      e.previous_index = optional_field<std::size_t>(ej, "previous_index");
      const auto prev = annotate::status_from_name(field<std::string>(ej, "previous_status"));
      if (!prev) throw Error(ErrorCode::Format, "unknown audit status");
      e.previous_status = *prev;
      e.new_index = optional_field<std::size_t>(ej, "new_index");
      a.audit.push_back(std::move(e));
    }
  }
  return a;
}

Json to_json(const split::SplitCounts& c) {
  return Json{{"train", {{"true", c.train_true}, {"false", c.train_false}, {"total", c.train_total()}}},
              {"test", {{"true", c.test_true}, {"false", c.test_false}, {"total", c.test_total()}}},
              {"total", c.train_total() + c.test_total()}};
}

Json to_json(const split::SplitResult& r) {
  return Json{{"seed", r.seed}, {"report", to_json(r.report)}, {"train", r.train}, {"test", r.test}};
}

split::SplitResult split_from_json(const Json& j) {
  split::SplitResult r;
  r.seed = field<std::uint64_t>(j, "seed");
  r.train = field<std::vector<std::string>>(j, "train");
  r.test = field<std::vector<std::string>>(j, "test");
  const Json rep = field<Json>(j, "report");
  const Json tr = field<Json>(rep, "train");
  const Json te = field<Json>(rep, "test");
  r.report.train_true = field<std::size_t>(tr, "true");
  r.report.train_false = field<std::size_t>(tr, "false");
  r.report.test_true = field<std::size_t>(te, "true");
  r.report.test_false = field<std::size_t>(te, "false");
  return r;
}

Json to_json(const split::Verification& v) {
  Json checks = Json::array();
  for (const auto& c : v.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return Json{{"passed", v.passed()}, {"checks", checks}};
}

Json to_json(const tagging::TaggedInstance& t) {
  return Json{{"pair_id", t.pair_id},
              {"sequence", t.sequence},
              {"label", pairs::label_name(t.label)},
              {"truncated", t.truncated}};
}

tagging::TaggedInstance tagged_from_json(const Json& j) {
  tagging::TaggedInstance t;
  t.pair_id = field<std::string>(j, "pair_id");
  t.sequence = field<std::string>(j, "sequence");
  if (!j.contains("label")) throw Error(ErrorCode::Format, "missing field 'label'");
  t.label = label_from_json(j.at("label"));
  t.truncated = optional_field<bool>(j, "truncated").value_or(false);
  t.token_budget_used = tagging::proxy_token_count(t.sequence);
  return t;
}

Json to_json(const eval::Prediction& p) {
  Json j{{"pair_id", p.pair_id}, {"predicted", pairs::label_name(p.predicted)}};
  if (p.score_true) j["score_true"] = *p.score_true;
  return j;
}

eval::Prediction prediction_from_json(const Json& j) {
  eval::Prediction p;
  p.pair_id = field<std::string>(j, "pair_id");
  if (!j.contains("predicted")) throw Error(ErrorCode::Format, "missing field 'predicted'");
  p.predicted = label_from_json(j.at("predicted"));
  p.score_true = optional_field<double>(j, "score_true");
  if (p.score_true && (*p.score_true < 0.0 || *p.score_true > 1.0)) {
    throw Error(ErrorCode::Format, "score_true must lie in [0, 1]");
  }
  return p;
}

Json to_json(const eval::EvalReport& r) {
  const auto& c = r.confusion;
  auto rounded = [](const eval::ClassMetrics& m) {
    return Json{{"precision", eval::round_half_up(m.precision)},
                {"recall", eval::round_half_up(m.recall)},
                {"f1", eval::round_half_up(m.f1)}};
  };
  return Json{{"split_signature", r.split_signature},
              {"n", c.total()},
              {"confusion", {{"tp", c.tp}, {"fn", c.fn}, {"fp", c.fp}, {"tn", c.tn}}},
              {"per_class", {{"true", metrics_json(r.true_class)}, {"false", metrics_json(r.false_class)}}},
              {"accuracy", r.accuracy},
              {"rounded",
               {{"true", rounded(r.true_class)},
                {"false", rounded(r.false_class)},
                {"accuracy", eval::round_half_up(r.accuracy)}}}};
}

eval::EvalReport report_from_json(const Json& j) {
  eval::EvalReport r;
  r.split_signature = field<std::string>(j, "split_signature");
  const Json c = field<Json>(j, "confusion");
  r.confusion = {field<std::size_t>(c, "tp"), field<std::size_t>(c, "fn"), field<std::size_t>(c, "fp"),
                 field<std::size_t>(c, "tn")};
  const Json pc = field<Json>(j, "per_class");
  r.true_class = metrics_from_json(field<Json>(pc, "true"));
  r.false_class = metrics_from_json(field<Json>(pc, "false"));
  r.accuracy = field<double>(j, "accuracy");
  return r;
}

// ---------------------------------------------------------------------------

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot replace " + path.string() + ": " + ec.message());
}

void for_each_jsonl(const std::filesystem::path& path, const std::function<void(const Json&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      fn(Json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::Format, path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

Json read_json(const std::filesystem::path& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Format, path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) { write_text_atomic(path, j.dump(2) + "\n"); }

}  // namespace glosspair::records
