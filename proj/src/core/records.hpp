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

// JSON / JSONL encodings of every record the pipeline reads or writes.

#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "core/dataset_splitter.hpp"
#include "core/evaluator.hpp"
#include "core/lexicon_ingest.hpp"
#include "core/pair_builder.hpp"
#include "core/signal_tagger.hpp"
#include "core/target_annotator.hpp"

namespace glosspair::records {

using Json = nlohmann::ordered_json;

Json to_json(const lexicon::SenseRecord& s);
Json to_json(const lexicon::Reject& r);
Json to_json(const lexicon::SenseStats& s);
Json to_json(const pairs::ContextGlossPair& p);
Json to_json(const pairs::PairStats& s);
Json to_json(const annotate::CandidateTarget& c);
Json to_json(const annotate::AuditEntry& a);
Json to_json(const annotate::ContextAnnotation& a);
Json to_json(const split::SplitCounts& c);
Json to_json(const split::SplitResult& r);
Json to_json(const split::Verification& v);
Json to_json(const tagging::TaggedInstance& t);
Json to_json(const eval::Prediction& p);
Json to_json(const eval::EvalReport& r);

// Decoders throw Error(Format) with the offending field name.
lexicon::SenseRecord sense_from_json(const Json& j);
pairs::ContextGlossPair pair_from_json(const Json& j);
annotate::ContextAnnotation annotation_from_json(const Json& j);
split::SplitResult split_from_json(const Json& j);
tagging::TaggedInstance tagged_from_json(const Json& j);
eval::Prediction prediction_from_json(const Json& j);
eval::EvalReport report_from_json(const Json& j);

pairs::Label label_from_json(const Json& j);

std::string read_text(const std::filesystem::path& path);

/// Writes to a sibling temp file and renames it over `path`.
void write_text_atomic(const std::filesystem::path& path, std::string_view content);

template <class T>
std::string to_jsonl(const std::vector<T>& items) {
  std::string out;
  for (const auto& item : items) {
    out += to_json(item).dump();
    out.push_back('\n');
  }
  return out;
}

template <class T>
void write_jsonl(const std::filesystem::path& path, const std::vector<T>& items) {
  write_text_atomic(path, to_jsonl(items));
}

/// Parses one JSON value per non-blank line. Errors carry path:line.
void for_each_jsonl(const std::filesystem::path& path, const std::function<void(const Json&)>& fn);

template <class T>
std::vector<T> read_jsonl(const std::filesystem::path& path, T (*decode)(const Json&)) {
  std::vector<T> out;
  for_each_jsonl(path, [&](const Json& j) { out.push_back(decode(j)); });
  return out;
}

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace glosspair::records
