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

#include "core/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <map>
#include <sstream>

#include "core/arabic_text.hpp"
#include "core/error.hpp"
#include "core/hashing.hpp"

namespace glosspair::pipeline {

namespace fs = std::filesystem;
using records::Json;

namespace {

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::Config, "config '" + std::string(key) + "': cannot parse '" + std::string(value) + "'");
  }
  return out;
}

double parse_double(std::string_view key, std::string_view value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(value), &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::Config, "config '" + std::string(key) + "': cannot parse '" + std::string(value) + "'");
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    std::string item(value.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string path_str(const fs::path& p) { return p.generic_string(); }

// Tracks the files a stage reads and writes and emits its manifest.
class Run {
 public:
  Run(std::string stage, const PipelineConfig& cfg) : stage_(std::move(stage)), cfg_(cfg) {
    cfg_.validate();
    fs::create_directories(cfg_.out_dir);
  }

  fs::path out(const std::string& name) const { return cfg_.out_dir / name; }

  const fs::path& read(const fs::path& p) {
    if (!fs::exists(p)) throw Error(ErrorCode::Io, stage_ + ": missing input " + path_str(p));
    inputs_.push_back(p);
    return p;
  }

  void wrote(const fs::path& p) { outputs_.push_back(p); }

  StageResult finish(Json summary) {
    Json inputs = Json::array();
    for (const auto& p : inputs_) inputs.push_back(Json{{"path", path_str(p)}, {"sha256", hashing::sha256_file(p)}});
    Json outputs = Json::array();
    for (const auto& p : outputs_) {
      outputs.push_back(Json{{"path", path_str(p.filename())}, {"sha256", hashing::sha256_file(p)}});
    }
    Json manifest{{"tool", "glosspair"},
                  {"version", GLOSSPAIR_VERSION},
                  {"stage", stage_},
                  {"config", cfg_.to_json()},
                  {"inputs", inputs},
                  {"outputs", outputs}};
    const fs::path manifest_path = out("manifest." + stage_ + ".json");
    records::write_json(manifest_path, manifest);
    summary["stage"] = stage_;
    StageResult r{std::move(summary), outputs_};
    r.outputs.push_back(manifest_path);
    return r;
  }

 private:
  std::string stage_;
  const PipelineConfig& cfg_;
  std::vector<fs::path> inputs_;
  std::vector<fs::path> outputs_;
};

fs::path or_default(const fs::path& override_path, const fs::path& fallback) {
  return override_path.empty() ? fallback : override_path;
}

text::NormProfile resolve_profile(const PipelineConfig& cfg) {
  if (!cfg.profile_file.empty()) return text::NormProfile::load(cfg.profile_file, cfg.profile, true);
  return text::builtin_profile(cfg.profile);
}

std::vector<pairs::ContextGlossPair> read_pairs(const fs::path& p) {
  return records::read_jsonl<pairs::ContextGlossPair>(p, &records::pair_from_json);
}

Json status_counts(const std::vector<annotate::ContextAnnotation>& items) {
  std::map<annotate::Status, std::size_t> counts{{annotate::Status::Pending, 0},
                                                 {annotate::Status::Auto, 0},
                                                 {annotate::Status::Verified, 0},
                                                 {annotate::Status::Corrected, 0}};
  for (const auto& a : items) ++counts[a.status];
  Json j = Json::object();
  for (const auto& [s, n] : counts) j[annotate::status_name(s)] = n;
  return j;
}

std::string fixed(double v, int digits) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(digits) << v;
  return o.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

void PipelineConfig::validate() const {
  if (max_len < tagging::kMinMaxLen) {
    throw Error(ErrorCode::Config, "max_len must be at least " + std::to_string(tagging::kMinMaxLen));
  }
  tagging::SignalVariation::parse(variation);
  if (profile_file.empty()) text::builtin_profile(profile);
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw Error(ErrorCode::Config, "threshold must lie in [0, 1]");
  if (out_dir.empty()) throw Error(ErrorCode::Config, "out_dir is required");
}

void PipelineConfig::set(std::string_view key, std::string_view value) {
  if (key == "out_dir") out_dir = fs::path(value);
  else if (key == "dump") dump = fs::path(value);
  else if (key == "specs") specs = fs::path(value);
  else if (key == "lemma_table") lemma_table = fs::path(value);
  else if (key == "profile_file") profile_file = fs::path(value);
  else if (key == "lexicon_rank") lexicon_rank = split_list(value);
  else if (key == "variation") variation = std::string(value);
  else if (key == "profile") profile = std::string(value);
  else if (key == "max_len") max_len = parse_number<std::size_t>(key, value);
  else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
  else if (key == "threshold") threshold = parse_double(key, value);
  else if (key == "input") input = fs::path(value);
  else if (key == "output") output = fs::path(value);
  else if (key == "gold") gold = fs::path(value);
  else if (key == "preds") preds = fs::path(value);
  else throw Error(ErrorCode::Config, "unknown config key '" + std::string(key) + "'");
}

void PipelineConfig::merge(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Config, "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "lexicon_rank" && value.is_array()) {
      lexicon_rank.clear();
      for (const auto& v : value) lexicon_rank.push_back(v.get<std::string>());
    } else if (value.is_string()) {
      set(key, value.get<std::string>());
    } else if (value.is_number() || value.is_boolean()) {
      set(key, value.dump());
    } else {
      throw Error(ErrorCode::Config, "config '" + key + "' has an unsupported type");
    }
  }
}

Json PipelineConfig::to_json() const {
  return Json{{"out_dir", path_str(out_dir)},
              {"dump", path_str(dump)},
              {"specs", path_str(specs)},
              {"lemma_table", path_str(lemma_table)},
              {"profile_file", path_str(profile_file)},
              {"lexicon_rank", lexicon_rank},
              {"variation", variation},
              {"profile", profile},
              {"max_len", max_len},
              {"seed", seed},
              {"threshold", threshold},
              {"input", path_str(input)},
              {"output", path_str(output)},
              {"gold", path_str(gold)},
              {"preds", path_str(preds)}};
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  PipelineConfig cfg;
  Json j;
  try {
    j = records::read_json(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::Config, std::string("config file: ") + e.what());
  }
  // Relative paths in a config file are relative to the file itself.
  cfg.merge(j);
  const fs::path base = path.parent_path();
  for (fs::path* p : {&cfg.dump, &cfg.specs, &cfg.lemma_table, &cfg.profile_file}) {
    if (!p->empty() && p->is_relative()) *p = base / *p;
  }
  if (!j.contains("out_dir")) cfg.out_dir = ".";
  return cfg;
}

// ---------------------------------------------------------------------------
// Stages

StageResult run_ingest(const PipelineConfig& cfg) {
  Run run("ingest", cfg);
  if (cfg.dump.empty() || cfg.specs.empty()) throw Error(ErrorCode::Config, "ingest needs dump and specs");
  auto loaded = lexicon::load_definitions(run.read(cfg.dump));
  const auto spec_file = lexicon::load_parser_specs(run.read(cfg.specs));
  const auto& rank = cfg.lexicon_rank.empty() ? spec_file.order : cfg.lexicon_rank;

  std::vector<lexicon::Reject> rejects = std::move(loaded.rejects);
  const auto selection = lexicon::select_candidates(loaded.definitions, spec_file.specs);
  for (const auto& ex : selection.excluded) {
    rejects.push_back({"select", lexicon::exclusion_reason_name(ex.reason), ex.definition.lexicon_id,
                       ex.definition.lemma_diacritized, ex.definition.line, ""});
  }
  std::vector<lexicon::SenseRecord> extracted;
  std::size_t parse_errors = 0;
  for (const auto& def : selection.candidates) {
    try {
      auto senses = lexicon::extract_senses(def, spec_file.specs.at(def.lexicon_id));
      std::move(senses.begin(), senses.end(), std::back_inserter(extracted));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Parse) throw;
      ++parse_errors;
      rejects.push_back({"extract", "PARSE_ERROR", def.lexicon_id, def.lemma_diacritized, def.line, e.what()});
    }
  }
  const std::size_t extracted_count = extracted.size();
  auto selected = lexicon::apply_selection_criteria(std::move(extracted), rank);
  std::move(selected.dropped.begin(), selected.dropped.end(), std::back_inserter(rejects));
  const auto stats = lexicon::dataset_stats(selected.senses);

  records::write_jsonl(run.out("senses.jsonl"), selected.senses);
  run.wrote(run.out("senses.jsonl"));
  records::write_jsonl(run.out("rejects.jsonl"), rejects);
  run.wrote(run.out("rejects.jsonl"));
  records::write_json(run.out("stats.json"), records::to_json(stats));
  run.wrote(run.out("stats.json"));

  return run.finish(Json{{"definitions", loaded.definitions.size()},
                         {"candidates", selection.candidates.size()},
                         {"excluded", selection.excluded.size()},
                         {"parse_errors", parse_errors},
                         {"extracted_senses", extracted_count},
                         {"senses", selected.senses.size()},
                         {"rejects", rejects.size()},
                         {"stats", records::to_json(stats)}});
}

StageResult run_pairs(const PipelineConfig& cfg) {
  Run run("pairs", cfg);
  const auto senses = records::read_jsonl<lexicon::SenseRecord>(
      run.read(or_default(cfg.input, run.out("senses.jsonl"))), &records::sense_from_json);
  for (const auto& s : senses) {
    if (!lexicon::satisfies_invariants(s)) throw Error(ErrorCode::Data, "sense " + s.sense_id + " violates invariants");
  }
  auto all = pairs::build_true_pairs(senses);
  auto negatives = pairs::build_false_pairs(all);
  std::move(negatives.begin(), negatives.end(), std::back_inserter(all));
  pairs::sort_by_pair_id(all);
  const fs::path out = or_default(cfg.output, run.out("pairs.jsonl"));
  records::write_jsonl(out, all);
  run.wrote(out);
  return run.finish(Json{{"pairs", records::to_json(pairs::pair_stats(all))}});
}

StageResult run_annotate(const PipelineConfig& cfg) {
  Run run("annotate", cfg);
  const auto all = read_pairs(run.read(or_default(cfg.input, run.out("pairs.jsonl"))));
  annotate::LemmaTable table;
  if (!cfg.lemma_table.empty()) table = annotate::LemmaTable::load(run.read(cfg.lemma_table));
  auto annotations = annotate::auto_annotate(all, table);

  // Reviewed work survives re-annotation as long as the context is unchanged.
  const fs::path out = or_default(cfg.output, run.out("annotations.jsonl"));
  std::size_t preserved = 0;
  if (fs::exists(out)) {
    std::map<std::string, annotate::ContextAnnotation> previous;
    records::for_each_jsonl(out, [&](const Json& j) {
      auto a = records::annotation_from_json(j);
      previous.emplace(a.context_id, std::move(a));
    });
    for (auto& a : annotations) {
      const auto it = previous.find(a.context_id);
      if (it == previous.end()) continue;
      const auto& old = it->second;
      const bool reviewed = old.status == annotate::Status::Verified || old.status == annotate::Status::Corrected;
      if (reviewed && old.context_text == a.context_text && old.lemma_key == a.lemma_key) {
        a = old;
        ++preserved;
      }
    }
  }
  records::write_jsonl(out, annotations);
  run.wrote(out);
  const auto multi = std::count_if(annotations.begin(), annotations.end(),
                                   [](const auto& a) { return a.multi_occurrence; });
  return run.finish(Json{{"contexts", annotations.size()},
                         {"status", status_counts(annotations)},
                         {"multi_occurrence", multi},
                         {"preserved_reviews", preserved},
                         {"lemma_table_entries", table.size()}});
}

StageResult run_split(const PipelineConfig& cfg) {
  Run run("split", cfg);
  const auto all = read_pairs(run.read(or_default(cfg.input, run.out("pairs.jsonl"))));
  const auto result = split::split(all, cfg.seed);
  const auto verification = split::verify_split(all, result);
  if (!verification.passed()) {
    for (const auto& c : verification.checks) {
      if (!c.passed) throw Error(ErrorCode::Data, "split verification failed: " + c.name + ": " + c.detail);
    }
  }
  std::map<std::string, const pairs::ContextGlossPair*> by_id;
  for (const auto& p : all) by_id.emplace(p.pair_id, &p);
  auto materialize = [&](const std::vector<std::string>& ids) {
    std::vector<pairs::ContextGlossPair> out;
    out.reserve(ids.size());
    for (const auto& id : ids) out.push_back(*by_id.at(id));
    return out;
  };
  records::write_json(run.out("split.json"), records::to_json(result));
  run.wrote(run.out("split.json"));
  records::write_jsonl(run.out("train.jsonl"), materialize(result.train));
  run.wrote(run.out("train.jsonl"));
  records::write_jsonl(run.out("test.jsonl"), materialize(result.test));
  run.wrote(run.out("test.jsonl"));
  records::write_json(run.out("split.verify.json"), records::to_json(verification));
  run.wrote(run.out("split.verify.json"));
  return run.finish(Json{{"seed", cfg.seed}, {"report", records::to_json(result.report)}, {"verified", true}});
}

StageResult run_tag(const PipelineConfig& cfg) {
  Run run("tag", cfg);
  const auto& variation = tagging::SignalVariation::parse(cfg.variation);
  const auto profile = resolve_profile(cfg);
  const fs::path input = or_default(cfg.input, run.out("pairs.jsonl"));
  const auto all = read_pairs(run.read(input));
  std::map<std::string, annotate::ContextAnnotation> annotations;
  records::for_each_jsonl(run.read(run.out("annotations.jsonl")), [&](const Json& j) {
    auto a = records::annotation_from_json(j);
    annotations.emplace(a.context_id, std::move(a));
  });
  const auto corpus = tagging::render_corpus(all, annotations, variation, profile, cfg.max_len);

  std::string stem = input.stem().string();
  const std::string base = stem == "pairs" ? "tagged." + variation.name() : "tagged." + stem + "." + variation.name();
  const fs::path out = or_default(cfg.output, run.out(base + ".jsonl"));
  records::write_jsonl(out, corpus.instances);
  run.wrote(out);

  fs::path meta_path = out;
  meta_path.replace_extension(".meta.json");
  Json meta{{"variation", variation.name()},
            {"open_mark", variation.open_mark},
            {"close_mark", variation.close_mark},
            {"gloss_prefix", variation.gloss_prefix},
            {"separator", std::string(tagging::kSeparator)},
            {"profile", profile.name()},
            {"max_len", cfg.max_len},
            {"length_proxy", "whitespace tokens + 2 encoder specials"},
            {"instances", corpus.instances.size()},
            {"truncated", corpus.truncated},
            {"source", path_str(input.filename())},
            {"source_sha256", hashing::sha256_file(input)}};
  records::write_json(meta_path, meta);
  run.wrote(meta_path);
  return run.finish(Json{{"instances", corpus.instances.size()}, {"truncated", corpus.truncated},
                         {"variation", variation.name()}, {"profile", profile.name()}});
}

StageResult run_stats(const PipelineConfig& cfg) {
  Run run("stats", cfg);
  Json out = Json::object();
  std::ostringstream text;
  if (const auto p = or_default(cfg.input, run.out("senses.jsonl")); fs::exists(p)) {
    const auto senses = records::read_jsonl<lexicon::SenseRecord>(run.read(p), &records::sense_from_json);
    const auto st = lexicon::dataset_stats(senses);
    out["senses"] = records::to_json(st);
    text << "Unique lemmas            " << st.lemmas << "\n"
         << "Avg glosses per lemma    " << fixed(st.avg_glosses_per_lemma, 2) << "\n"
         << "Unique glosses           " << st.glosses << "\n"
         << "Unique contexts          " << st.contexts << "\n"
         << "Avg contexts per gloss   " << fixed(st.avg_contexts_per_gloss, 2) << "\n";
  }
  if (const auto p = run.out("pairs.jsonl"); fs::exists(p)) {
    const auto ps = pairs::pair_stats(read_pairs(run.read(p)));
    out["pairs"] = records::to_json(ps);
    text << "True pairs               " << ps.true_pairs << "\n"
         << "False pairs              " << ps.false_pairs << "\n"
         << "Total pairs              " << ps.total() << "\n";
  }
  if (const auto p = run.out("split.json"); fs::exists(p)) {
    const auto r = records::split_from_json(records::read_json(run.read(p))).report;
    out["split"] = records::to_json(r);
    text << "Training  True " << r.train_true << "  False " << r.train_false << "  Total " << r.train_total() << "\n"
         << "Test      True " << r.test_true << "  False " << r.test_false << "  Total " << r.test_total() << "\n";
  }
  if (out.empty()) throw Error(ErrorCode::Io, "stats: no senses.jsonl, pairs.jsonl or split.json in " + path_str(cfg.out_dir));
  records::write_json(run.out("dataset_stats.json"), out);
  run.wrote(run.out("dataset_stats.json"));
  out["text"] = text.str();
  return run.finish(out);
}

StageResult run_baseline(const PipelineConfig& cfg) {
  Run run("baseline", cfg);
  const auto profile = resolve_profile(cfg);
  const auto gold = read_pairs(run.read(or_default(cfg.input, run.out("test.jsonl"))));
  std::vector<eval::Prediction> preds;
  preds.reserve(gold.size());
  for (const auto& p : gold) preds.push_back(eval::baseline_overlap(p, profile, cfg.threshold));
  const fs::path out = or_default(cfg.output, run.out("preds.jsonl"));
  records::write_jsonl(out, preds);
  run.wrote(out);
  const auto positives = std::count_if(preds.begin(), preds.end(),
                                       [](const auto& p) { return p.predicted == pairs::Label::True; });
  return run.finish(Json{{"predictions", preds.size()}, {"predicted_true", positives}, {"threshold", cfg.threshold}});
}

StageResult run_eval(const PipelineConfig& cfg) {
  Run run("eval", cfg);
  const auto gold = read_pairs(run.read(or_default(cfg.gold, run.out("test.jsonl"))));
  const auto preds = records::read_jsonl<eval::Prediction>(run.read(or_default(cfg.preds, run.out("preds.jsonl"))),
                                                           &records::prediction_from_json);
  const auto report = eval::evaluate(gold, preds);
  const std::string table = eval::render_table(report);
  records::write_json(run.out("report.json"), records::to_json(report));
  run.wrote(run.out("report.json"));
  records::write_text_atomic(run.out("report.txt"), table);
  run.wrote(run.out("report.txt"));
  return run.finish(Json{{"report", records::to_json(report)}, {"text", table}});
}

StageResult run_stage(std::string_view stage, const PipelineConfig& cfg) {
  if (stage == "ingest") return run_ingest(cfg);
  if (stage == "pairs") return run_pairs(cfg);
  if (stage == "annotate") return run_annotate(cfg);
  if (stage == "split") return run_split(cfg);
  if (stage == "tag") return run_tag(cfg);
  if (stage == "stats") return run_stats(cfg);
  if (stage == "baseline") return run_baseline(cfg);
  if (stage == "eval") return run_eval(cfg);
  throw Error(ErrorCode::Config, "unknown stage '" + std::string(stage) + "'");
}

}  // namespace glosspair::pipeline
