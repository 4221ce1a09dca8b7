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

#include "glosspair/glosspair.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "core/annotation_store.hpp"
#include "core/arabic_text.hpp"
#include "core/error.hpp"
#include "core/pipeline.hpp"
#include "core/records.hpp"

struct gp_pipeline {
  glosspair::pipeline::PipelineConfig config;
};

struct gp_store {
  std::unique_ptr<glosspair::annotate::AnnotationStore> store;
};

namespace {

using glosspair::Error;
using glosspair::ErrorCode;
using glosspair::records::Json;

thread_local std::string g_last_error;

gp_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return GP_ERR_INVALID_ARGUMENT;
    case ErrorCode::Config: return GP_ERR_CONFIG;
    case ErrorCode::Io: return GP_ERR_IO;
    case ErrorCode::Format: return GP_ERR_FORMAT;
    case ErrorCode::Data: return GP_ERR_DATA;
    case ErrorCode::NotFound: return GP_ERR_NOT_FOUND;
    case ErrorCode::OutOfRange: return GP_ERR_OUT_OF_RANGE;
    case ErrorCode::Conflict: return GP_ERR_CONFLICT;
    case ErrorCode::Unannotated: return GP_ERR_UNANNOTATED;
    case ErrorCode::EmptyTest: return GP_ERR_EMPTY_TEST;
    case ErrorCode::UndefinedSimilarity: return GP_ERR_UNDEFINED_SIMILARITY;
    case ErrorCode::Parse: return GP_ERR_PARSE;
  }
  return GP_ERR_INTERNAL;
}

template <class Fn>
gp_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return GP_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return GP_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  if (out != nullptr) *out = dup(s);
}

gp_status run(gp_pipeline* p, const char* stage, char** summary_json) {
  return guarded([&] {
    require(p, "pipeline");
    require(stage, "stage");
    const auto result = glosspair::pipeline::run_stage(stage, p->config);
    emit(summary_json, result.summary.dump());
  });
}

Json with_tokens(const glosspair::annotate::ContextAnnotation& a) {
  Json j = glosspair::records::to_json(a);
  Json tokens = Json::array();
  std::size_t i = 0;
  for (const auto& t : glosspair::text::tokenize(a.context_text)) {
    tokens.push_back(Json{{"index", i++}, {"text", t.text}, {"offset", t.offset}, {"is_word", t.is_word}});
  }
  j["tokens"] = std::move(tokens);
  return j;
}

}  // namespace

extern "C" {

const char* gp_status_name(gp_status status) {
  switch (status) {
    case GP_OK: return "OK";
    case GP_ERR_INVALID_ARGUMENT: return glosspair::error_code_name(ErrorCode::InvalidArgument);
    case GP_ERR_CONFIG: return glosspair::error_code_name(ErrorCode::Config);
    case GP_ERR_IO: return glosspair::error_code_name(ErrorCode::Io);
    case GP_ERR_FORMAT: return glosspair::error_code_name(ErrorCode::Format);
    case GP_ERR_DATA: return glosspair::error_code_name(ErrorCode::Data);
    case GP_ERR_NOT_FOUND: return glosspair::error_code_name(ErrorCode::NotFound);
    case GP_ERR_OUT_OF_RANGE: return glosspair::error_code_name(ErrorCode::OutOfRange);
    case GP_ERR_CONFLICT: return glosspair::error_code_name(ErrorCode::Conflict);
    case GP_ERR_UNANNOTATED: return glosspair::error_code_name(ErrorCode::Unannotated);
    case GP_ERR_EMPTY_TEST: return glosspair::error_code_name(ErrorCode::EmptyTest);
    case GP_ERR_UNDEFINED_SIMILARITY: return glosspair::error_code_name(ErrorCode::UndefinedSimilarity);
    case GP_ERR_PARSE: return glosspair::error_code_name(ErrorCode::Parse);
    case GP_ERR_INTERNAL: break;
  }
  return "E_INTERNAL";
}

const char* gp_version(void) { return GLOSSPAIR_VERSION; }

const char* gp_last_error(void) { return g_last_error.c_str(); }

void gp_string_free(char* s) { std::free(s); }

gp_status gp_undiacritize(const char* text, char** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = dup(glosspair::text::undiacritize(text));
  });
}

gp_status gp_normalize(const char* text, const char* profile, char** out) {
  return guarded([&] {
    require(text, "text");
    require(profile, "profile");
    require(out, "out");
    *out = dup(glosspair::text::normalize(text, glosspair::text::builtin_profile(profile)));
  });
}

gp_status gp_levenshtein(const char* a, const char* b, size_t* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = glosspair::text::levenshtein(std::string_view(a), std::string_view(b));
  });
}

gp_status gp_char_cosine(const char* a, const char* b, double* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = glosspair::text::char_cosine(a, b);
  });
}

gp_status gp_pipeline_create(gp_pipeline** out) {
  return guarded([&] {
    require(out, "out");
    *out = new gp_pipeline();
  });
}

void gp_pipeline_destroy(gp_pipeline* p) { delete p; }

gp_status gp_pipeline_load_config(gp_pipeline* p, const char* path) {
  return guarded([&] {
    require(p, "pipeline");
    require(path, "path");
    p->config = glosspair::pipeline::PipelineConfig::load(path);
  });
}

gp_status gp_pipeline_set(gp_pipeline* p, const char* key, const char* value) {
  return guarded([&] {
    require(p, "pipeline");
    require(key, "key");
    require(value, "value");
    p->config.set(key, value);
  });
}

gp_status gp_pipeline_config_json(const gp_pipeline* p, char** out) {
  return guarded([&] {
    require(p, "pipeline");
    require(out, "out");
    *out = dup(p->config.to_json().dump());
  });
}

gp_status gp_run_stage(gp_pipeline* p, const char* stage, char** summary_json) {
  return run(p, stage, summary_json);
}
gp_status gp_run_ingest(gp_pipeline* p, char** s) { return run(p, "ingest", s); }
gp_status gp_run_pairs(gp_pipeline* p, char** s) { return run(p, "pairs", s); }
gp_status gp_run_annotate(gp_pipeline* p, char** s) { return run(p, "annotate", s); }
gp_status gp_run_split(gp_pipeline* p, char** s) { return run(p, "split", s); }
gp_status gp_run_tag(gp_pipeline* p, char** s) { return run(p, "tag", s); }
gp_status gp_run_stats(gp_pipeline* p, char** s) { return run(p, "stats", s); }
gp_status gp_run_baseline(gp_pipeline* p, char** s) { return run(p, "baseline", s); }
gp_status gp_run_eval(gp_pipeline* p, char** s) { return run(p, "eval", s); }

gp_status gp_store_open(const char* annotations_path, gp_store** out) {
  return guarded([&] {
    require(annotations_path, "annotations_path");
    require(out, "out");
    auto s = std::make_unique<gp_store>();
    s->store = std::make_unique<glosspair::annotate::AnnotationStore>(annotations_path);
    *out = s.release();
  });
}

void gp_store_close(gp_store* s) { delete s; }

gp_status gp_store_queue(const gp_store* s, const char* status_filter, size_t limit, char** out_json) {
  return guarded([&] {
    require(s, "store");
    require(out_json, "out_json");
    std::vector<glosspair::annotate::Status> statuses;
    if (status_filter != nullptr) {
      std::string_view rest(status_filter);
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto name = rest.substr(0, comma);
        if (!name.empty()) {
          const auto st = glosspair::annotate::status_from_name(name);
          if (!st) throw Error(ErrorCode::InvalidArgument, "unknown status '" + std::string(name) + "'");
          statuses.push_back(*st);
        }
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      }
    }
    const auto items = s->store->queue(statuses, limit);
    Json arr = Json::array();
    for (const auto& a : items) arr.push_back(glosspair::records::to_json(a));
    *out_json = dup(Json{{"items", arr}, {"total", s->store->size()}}.dump());
  });
}

gp_status gp_store_context(const gp_store* s, const char* context_id, char** out_json) {
  return guarded([&] {
    require(s, "store");
    require(context_id, "context_id");
    require(out_json, "out_json");
    const auto a = s->store->get(context_id);
    if (!a) throw Error(ErrorCode::NotFound, std::string("unknown context_id ") + context_id);
    *out_json = dup(with_tokens(*a).dump());
  });
}

gp_status gp_store_review(gp_store* s, const char* context_id, const char* action, long token_index,
                          const char* reviewer, long expected_revision, char** out_json) {
  return guarded([&] {
    require(s, "store");
    require(context_id, "context_id");
    require(action, "action");
    require(reviewer, "reviewer");
    using glosspair::annotate::ReviewDecision;
    ReviewDecision decision;
    const std::string_view act(action);
    if (act == "confirm") {
      decision = ReviewDecision::confirm();
    } else if (act == "correct") {
      if (token_index < 0) throw Error(ErrorCode::InvalidArgument, "correct requires token_index");
      decision = ReviewDecision::correct(static_cast<std::size_t>(token_index));
    } else {
      throw Error(ErrorCode::InvalidArgument, "action must be confirm or correct");
    }
    std::optional<std::uint64_t> expected;
    if (expected_revision >= 0) expected = static_cast<std::uint64_t>(expected_revision);
    const auto updated = s->store->review(context_id, decision, reviewer, expected);
    emit(out_json, with_tokens(updated).dump());
  });
}

gp_status gp_store_progress(const gp_store* s, char** out_json) {
  return guarded([&] {
    require(s, "store");
    require(out_json, "out_json");
    Json counts = Json::object();
    for (const auto& [st, n] : s->store->progress()) counts[glosspair::annotate::status_name(st)] = n;
    counts["total"] = s->store->size();
    *out_json = dup(counts.dump());
  });
}

}  // extern "C"
