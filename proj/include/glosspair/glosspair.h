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

/* C interface to the glosspair core. All strings are UTF-8. Strings returned
 * through char** out-parameters are owned by the caller and released with
 * gp_string_free. On failure a function returns a non-zero gp_status and the
 * message is available from gp_last_error() on the same thread. */

#ifndef GLOSSPAIR_GLOSSPAIR_H_
#define GLOSSPAIR_GLOSSPAIR_H_

#include <stddef.h>

#if defined(GLOSSPAIR_BUILDING)
#define GP_API __attribute__((visibility("default")))
#else
#define GP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gp_status {
  GP_OK = 0,
  GP_ERR_INVALID_ARGUMENT = 1,
  GP_ERR_CONFIG = 2,
  GP_ERR_IO = 3,
  GP_ERR_FORMAT = 4,
  GP_ERR_DATA = 5,
  GP_ERR_NOT_FOUND = 6,
  GP_ERR_OUT_OF_RANGE = 7,
  GP_ERR_CONFLICT = 8,
  GP_ERR_UNANNOTATED = 9,
  GP_ERR_EMPTY_TEST = 10,
  GP_ERR_UNDEFINED_SIMILARITY = 11,
  GP_ERR_PARSE = 12,
  GP_ERR_INTERNAL = 13
} gp_status;

/* "E_CONFIG", "E_DATA", ... ; "OK" for GP_OK. Never NULL. */
GP_API const char* gp_status_name(gp_status status);
GP_API const char* gp_version(void);
/* Message of the last failure on this thread, "" if none. */
GP_API const char* gp_last_error(void);
GP_API void gp_string_free(char* s);

/* Text utilities. */
GP_API gp_status gp_undiacritize(const char* text, char** out);
/* profile: "none", "camel". */
GP_API gp_status gp_normalize(const char* text, const char* profile, char** out);
GP_API gp_status gp_levenshtein(const char* a, const char* b, size_t* out);
/* GP_ERR_UNDEFINED_SIMILARITY when either side has no characters. */
GP_API gp_status gp_char_cosine(const char* a, const char* b, double* out);

/* Pipeline. A handle holds one configuration; stages write into its out_dir. */
typedef struct gp_pipeline gp_pipeline;

GP_API gp_status gp_pipeline_create(gp_pipeline** out);
GP_API void gp_pipeline_destroy(gp_pipeline* p);
/* Replaces the configuration with the contents of a JSON config file. */
GP_API gp_status gp_pipeline_load_config(gp_pipeline* p, const char* path);
GP_API gp_status gp_pipeline_set(gp_pipeline* p, const char* key, const char* value);
GP_API gp_status gp_pipeline_config_json(const gp_pipeline* p, char** out);

/* Each stage returns its JSON summary through summary_json (may be NULL). */
GP_API gp_status gp_run_stage(gp_pipeline* p, const char* stage, char** summary_json);
GP_API gp_status gp_run_ingest(gp_pipeline* p, char** summary_json);
GP_API gp_status gp_run_pairs(gp_pipeline* p, char** summary_json);
GP_API gp_status gp_run_annotate(gp_pipeline* p, char** summary_json);
GP_API gp_status gp_run_split(gp_pipeline* p, char** summary_json);
GP_API gp_status gp_run_tag(gp_pipeline* p, char** summary_json);
GP_API gp_status gp_run_stats(gp_pipeline* p, char** summary_json);
GP_API gp_status gp_run_baseline(gp_pipeline* p, char** summary_json);
GP_API gp_status gp_run_eval(gp_pipeline* p, char** summary_json);

/* Annotation store backing the review service. Thread-safe. */
typedef struct gp_store gp_store;

GP_API gp_status gp_store_open(const char* annotations_path, gp_store** out);
GP_API void gp_store_close(gp_store* s);
/* status_filter: comma-separated status names, NULL or "" for PENDING,AUTO.
 * limit 0 means no limit. Writes {"items":[...],"total":n}. */
GP_API gp_status gp_store_queue(const gp_store* s, const char* status_filter, size_t limit, char** out_json);
/* Annotation record plus a "tokens" array. */
GP_API gp_status gp_store_context(const gp_store* s, const char* context_id, char** out_json);
/* action: "confirm" or "correct". token_index and expected_revision are
 * ignored when negative. Writes the updated annotation. */
GP_API gp_status gp_store_review(gp_store* s, const char* context_id, const char* action, long token_index,
                                 const char* reviewer, long expected_revision, char** out_json);
/* {"PENDING":n,"AUTO":n,"VERIFIED":n,"CORRECTED":n,"total":n} */
GP_API gp_status gp_store_progress(const gp_store* s, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* GLOSSPAIR_GLOSSPAIR_H_ */
