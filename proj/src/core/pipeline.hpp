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

// Pipeline stages over the on-disk artifacts. Each stage reads and writes
// only its documented files inside the output directory and leaves a
// manifest.<stage>.json with content hashes of everything it touched.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "core/records.hpp"

namespace glosspair::pipeline {

struct PipelineConfig {
  std::filesystem::path out_dir = ".";
  std::filesystem::path dump;
  std::filesystem::path specs;
  std::filesystem::path lemma_table;
  std::filesystem::path profile_file;  // optional custom rule table
  std::vector<std::string> lexicon_rank;
  std::string variation = "v2";
  std::string profile = "none";
  std::size_t max_len = 512;
  std::uint64_t seed = 13;
  double threshold = 0.5;
  // Per-stage overrides; empty means the default file in out_dir.
  std::filesystem::path input;
  std::filesystem::path output;
  std::filesystem::path gold;
  std::filesystem::path preds;

  /// Throws Error(Config).
  void validate() const;

  /// String-typed setter shared by config files and flags.
  /// Throws Error(Config) on unknown keys or unparsable values.
  void set(std::string_view key, std::string_view value);
  void merge(const records::Json& j);
  records::Json to_json() const;

  static PipelineConfig load(const std::filesystem::path& path);
};

inline constexpr const char* kStages[] = {"ingest", "pairs", "annotate", "split", "tag", "stats", "baseline", "eval"};

/// Summary of a stage run; also printed by the CLI.
struct StageResult {
  records::Json summary;
  std::vector<std::filesystem::path> outputs;
};

StageResult run_ingest(const PipelineConfig& cfg);
StageResult run_pairs(const PipelineConfig& cfg);
StageResult run_annotate(const PipelineConfig& cfg);
StageResult run_split(const PipelineConfig& cfg);
StageResult run_tag(const PipelineConfig& cfg);
StageResult run_stats(const PipelineConfig& cfg);
StageResult run_baseline(const PipelineConfig& cfg);
StageResult run_eval(const PipelineConfig& cfg);

/// Dispatches by stage name. Throws Error(Config) for unknown names.
StageResult run_stage(std::string_view stage, const PipelineConfig& cfg);

}  // namespace glosspair::pipeline
