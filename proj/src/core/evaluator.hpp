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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "core/arabic_text.hpp"
#include "core/pair_builder.hpp"

namespace glosspair::eval {

struct Prediction {
  std::string pair_id;
  pairs::Label predicted = pairs::Label::False;
  std::optional<double> score_true;

  bool operator==(const Prediction&) const = default;
};

/// True is the positive class.
struct Confusion {
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;

  std::size_t total() const noexcept { return tp + fn + fp + tn; }
  bool operator==(const Confusion&) const = default;
};

/// Percentages, unrounded.
struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  Confusion confusion;
  ClassMetrics true_class;
  ClassMetrics false_class;
  double accuracy = 0.0;
  std::string split_signature;  // identifies the gold pair set
};

/// Half-up rounding to an integer, as the result tables print.
long round_half_up(double value) noexcept;

/// Metrics derived purely from counts; empty denominators give 0.
EvalReport report_from_confusion(const Confusion& c, std::string split_signature = {});

/// Hash of the sorted gold pair_ids.
std::string split_signature(const std::vector<pairs::ContextGlossPair>& gold);

/// Throws Error(Data) on missing, duplicate or unknown pair_ids.
EvalReport evaluate(const std::vector<pairs::ContextGlossPair>& gold, const std::vector<Prediction>& preds);

/// Precision/Recall/F1-score rows by True/False columns, plus accuracy.
std::string render_table(const EvalReport& report);

/// Model-free scorer: share of distinct gloss words that also occur in the
/// context. Throws Error(Data) when the gloss has no words.
Prediction baseline_overlap(const pairs::ContextGlossPair& pair, const text::NormProfile& profile, double threshold);

struct ReportDelta {
  ClassMetrics true_class;
  ClassMetrics false_class;
  double accuracy = 0.0;
};

/// a - b per metric. Throws Error(Data) if the reports cover different splits.
ReportDelta compare_reports(const EvalReport& a, const EvalReport& b);

}  // namespace glosspair::eval
