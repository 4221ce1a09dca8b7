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

#include "core/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <unordered_map>

#include "core/error.hpp"
#include "core/hashing.hpp"

namespace glosspair::eval {
namespace {

double pct(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

ClassMetrics metrics(std::size_t hit, std::size_t predicted, std::size_t actual) {
  ClassMetrics m;
  m.precision = pct(hit, predicted);
  m.recall = pct(hit, actual);
  m.f1 = (m.precision + m.recall) == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

std::set<std::string> word_set(const std::string& s) {
  std::set<std::string> out;
  for (const auto& t : text::tokenize(s)) {
    if (t.is_word) out.insert(t.text);
  }
  return out;
}

}  // namespace

long round_half_up(double value) noexcept { return static_cast<long>(std::floor(value + 0.5)); }

EvalReport report_from_confusion(const Confusion& c, std::string signature) {
  EvalReport r;
  r.confusion = c;
  r.true_class = metrics(c.tp, c.tp + c.fp, c.tp + c.fn);
  r.false_class = metrics(c.tn, c.tn + c.fn, c.tn + c.fp);
  r.accuracy = pct(c.tp + c.tn, c.total());
  r.split_signature = std::move(signature);
  return r;
}

std::string split_signature(const std::vector<pairs::ContextGlossPair>& gold) {
  std::vector<std::string> ids;
  ids.reserve(gold.size());
  for (const auto& p : gold) ids.push_back(p.pair_id);
  std::sort(ids.begin(), ids.end());
  std::string material;
  for (const auto& id : ids) material.append(id).push_back('\n');
  return hashing::sha256_hex(material).substr(0, 16);
}

EvalReport evaluate(const std::vector<pairs::ContextGlossPair>& gold, const std::vector<Prediction>& preds) {
  std::unordered_map<std::string, pairs::Label> truth;
  for (const auto& p : gold) {
    if (!truth.emplace(p.pair_id, p.label).second) throw Error(ErrorCode::Data, "duplicate gold pair_id " + p.pair_id);
  }
  std::unordered_map<std::string, bool> covered;
  Confusion c;
  for (const auto& pr : preds) {
    const auto it = truth.find(pr.pair_id);
    if (it == truth.end()) throw Error(ErrorCode::Data, "prediction for unknown pair_id " + pr.pair_id);
    if (!covered.emplace(pr.pair_id, true).second) throw Error(ErrorCode::Data, "duplicate prediction for " + pr.pair_id);
    const bool actual = it->second == pairs::Label::True;
    const bool predicted = pr.predicted == pairs::Label::True;
    if (actual && predicted) ++c.tp;
    else if (actual) ++c.fn;
    else if (predicted) ++c.fp;
    else ++c.tn;
  }
  if (covered.size() != truth.size()) {
    for (const auto& p : gold) {
      if (covered.count(p.pair_id) == 0) {
        throw Error(ErrorCode::Data, std::to_string(truth.size() - covered.size()) +
                                         " gold pairs lack a prediction, e.g. " + p.pair_id);
      }
    }
  }
  return report_from_confusion(c, split_signature(gold));
}

std::string render_table(const EvalReport& r) {
  std::ostringstream out;
  auto row = [&](const char* name, double t, double f, const std::string& acc) {
    out << std::left << std::setw(10) << name << std::right << std::setw(6) << round_half_up(t) << std::setw(7)
        << round_half_up(f) << std::setw(10) << acc << "\n";
  };
  out << std::left << std::setw(10) << "" << std::right << std::setw(6) << "True" << std::setw(7) << "False"
      << std::setw(10) << "Accuracy" << "\n";
  row("Precision", r.true_class.precision, r.false_class.precision, std::to_string(round_half_up(r.accuracy)));
  row("Recall", r.true_class.recall, r.false_class.recall, "");
  row("F1-score", r.true_class.f1, r.false_class.f1, "");
  return out.str();
}

Prediction baseline_overlap(const pairs::ContextGlossPair& pair, const text::NormProfile& profile, double threshold) {
  const auto gloss = word_set(profile.apply(std::string_view(pair.gloss_text)));
  if (gloss.empty()) throw Error(ErrorCode::Data, "pair " + pair.pair_id + ": empty gloss after normalization");
  const auto context = word_set(profile.apply(std::string_view(pair.context_text)));
  std::size_t shared = 0;
  for (const auto& w : gloss) shared += context.count(w);
  const double ratio = std::clamp(static_cast<double>(shared) / static_cast<double>(gloss.size()), 0.0, 1.0);
  return Prediction{pair.pair_id, ratio >= threshold ? pairs::Label::True : pairs::Label::False, ratio};
}

ReportDelta compare_reports(const EvalReport& a, const EvalReport& b) {
  if (a.split_signature != b.split_signature || a.confusion.total() != b.confusion.total()) {
    throw Error(ErrorCode::Data, "reports cover different splits");
  }
  auto diff = [](const ClassMetrics& x, const ClassMetrics& y) {
    return ClassMetrics{x.precision - y.precision, x.recall - y.recall, x.f1 - y.f1};
  };
  return ReportDelta{diff(a.true_class, b.true_class), diff(a.false_class, b.false_class), a.accuracy - b.accuracy};
}

}  // namespace glosspair::eval
