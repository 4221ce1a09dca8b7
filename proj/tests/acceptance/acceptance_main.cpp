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

// One PASS/FAIL line per primary acceptance criterion. Exit status is the
// number of failures.
//
//   acceptance_tests <path-to-glosspair-cli>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "confusion_search.hpp"
#include "core/arabic_text.hpp"
#include "core/dataset_splitter.hpp"
#include "core/error.hpp"
#include "core/evaluator.hpp"
#include "core/hashing.hpp"
#include "core/pair_builder.hpp"
#include "core/pipeline.hpp"
#include "core/records.hpp"
#include "core/signal_tagger.hpp"
#include "core/target_annotator.hpp"
#include "core/utf8.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace glosspair;
using pairs::ContextGlossPair;
using pairs::Label;
namespace fs = std::filesystem;

namespace {

// Failed expectation inside a criterion; the message becomes the FAIL detail.
struct Failure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs", s);
  return buf;
}

std::string g_cli;

// --- false pairs ------------------------------------------------------------

std::string false_pair_equivalence() {
  const auto t0 = Clock::now();
  gp_test::Rng rng(20240611);
  std::size_t total = 0;
  for (int round = 0; round < 200; ++round) {
    const auto senses = gp_test::random_inventory(rng, 100, 5, 4);
    const auto falses = pairs::build_false_pairs(pairs::build_true_pairs(senses));
    const auto got = gp_test::pair_keys(falses);
    expect(got.size() == falses.size(), "duplicate false pair in round " + std::to_string(round));
    expect(got == gp_test::false_oracle(senses), "set differs from brute force in round " + std::to_string(round));
    expect(gp_test::false_counts_match(senses, falses), "per-lemma count formula broken in round " + std::to_string(round));
    for (const auto& p : falses) expect(p.label == Label::False, "non-False label in false pairs");
    total += falses.size();
  }
  const double s = seconds_since(t0);
  expect(s < 5.0, "took " + fmt_seconds(s) + ", limit 5s");
  return "200 inventories, " + std::to_string(total) + " false pairs, " + fmt_seconds(s);
}

// --- split ------------------------------------------------------------------

// Independent restatement of the split invariants.
std::string split_oracle(const std::vector<ContextGlossPair>& all, const split::SplitResult& r) {
  std::map<std::string, const ContextGlossPair*> by_id;
  for (const auto& p : all) by_id[p.pair_id] = &p;
  std::set<std::string> train(r.train.begin(), r.train.end()), test(r.test.begin(), r.test.end());
  if (train.size() != r.train.size() || test.size() != r.test.size()) return "duplicate ids";
  for (const auto& id : test) {
    if (train.count(id)) return "pair in both splits";
  }
  if (train.size() + test.size() != all.size()) return "pairs missing";
  std::set<std::string> train_ctx, test_ctx, test_true_ctx;
  std::map<std::string, std::size_t> contexts_per_gloss, train_gloss, test_gloss;
  for (const auto& p : all) {
    if (p.label == Label::True) ++contexts_per_gloss[p.gloss_id];
  }
  for (const auto& id : train) {
    const auto* p = by_id.at(id);
    train_ctx.insert(p->context_id);
    if (p->label == Label::True) ++train_gloss[p->gloss_id];
  }
  for (const auto& id : test) {
    const auto* p = by_id.at(id);
    test_ctx.insert(p->context_id);
    if (p->label == Label::True) {
      ++test_gloss[p->gloss_id];
      test_true_ctx.insert(p->context_id);
    }
  }
  for (const auto& c : test_ctx) {
    if (train_ctx.count(c)) return "context " + c + " in both splits";
  }
  for (const auto& [gloss, n] : contexts_per_gloss) {
    if (n >= 2 && (train_gloss[gloss] == 0 || test_gloss[gloss] != 1)) return "gloss " + gloss + " not split 1/rest";
    if (n < 2 && test_gloss[gloss] != 0) return "single-context gloss " + gloss + " in test";
  }
  for (const auto& p : all) {
    const bool want = p.label == Label::False && test_true_ctx.count(p.context_id);
    const bool is_test_false = p.label == Label::False && test.count(p.pair_id);
    if (want != is_test_false) return "test False set is not the closure of test contexts";
  }
  return {};
}

std::vector<split::SplitResult> injected_faults(const std::vector<ContextGlossPair>& all, const split::SplitResult& good) {
  std::map<std::string, const ContextGlossPair*> by_id;
  for (const auto& p : all) by_id[p.pair_id] = &p;
  std::vector<split::SplitResult> faults;
  auto resort = [](split::SplitResult& r) {
    std::sort(r.train.begin(), r.train.end());
    std::sort(r.test.begin(), r.test.end());
  };
  {  // duplicated across splits
    auto r = good;
    r.train.push_back(r.test.front());
    resort(r);
    faults.push_back(r);
  }
  {  // dropped
    auto r = good;
    r.test.pop_back();
    faults.push_back(r);
  }
  {  // test True pair moved to train: its context leaks
    auto r = good;
    auto it = std::find_if(r.test.begin(), r.test.end(), [&](auto& id) { return by_id[id]->label == Label::True; });
    r.train.push_back(*it);
    r.test.erase(it);
    resort(r);
    faults.push_back(r);
  }
  {  // a train False pair whose context is train-only pulled into test
    auto r = good;
    std::set<std::string> test_ctx;
    for (const auto& id : r.test) test_ctx.insert(by_id[id]->context_id);
    auto it = std::find_if(r.train.begin(), r.train.end(), [&](auto& id) {
      return by_id[id]->label == Label::False && !test_ctx.count(by_id[id]->context_id);
    });
    if (it != r.train.end()) {
      r.test.push_back(*it);
      r.train.erase(it);
      resort(r);
      faults.push_back(r);
    }
  }
  {  // tampered report
    auto r = good;
    r.report.train_false += 1;
    faults.push_back(r);
  }
  return faults;
}

std::string split_soundness() {
  const auto t0 = Clock::now();
  std::size_t faults = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    gp_test::Rng rng(seed * 7919 + 1);
    std::vector<ContextGlossPair> all;
    split::SplitResult r;
    for (;;) {
      all = gp_test::all_pairs(gp_test::random_inventory(rng, 20, 4, 4));
      try {
        r = split::split(all, seed);
        break;
      } catch (const Error& e) {
        expect(e.code() == ErrorCode::EmptyTest, "unexpected split error " + std::string(e.what()));
      }
    }
    const auto v = split::verify_split(all, r);
    expect(v.passed(), "verify_split rejected a clean split at seed " + std::to_string(seed));
    const auto why = split_oracle(all, r);
    expect(why.empty(), "seed " + std::to_string(seed) + ": " + why);
    expect(split::split(all, seed).train == r.train, "split not reproducible at seed " + std::to_string(seed));
    for (const auto& bad : injected_faults(all, r)) {
      ++faults;
      expect(!split::verify_split(all, bad).passed(), "injected fault undetected at seed " + std::to_string(seed));
    }
  }
  const double s = seconds_since(t0);
  expect(s < 10.0, "took " + fmt_seconds(s) + ", limit 10s");
  return "100 seeds, " + std::to_string(faults) + " injected faults detected, " + fmt_seconds(s);
}

// --- mini lexicon -----------------------------------------------------------

std::string mini_split_counts() {
  auto cfg = pipeline::PipelineConfig::load(gp_test::source_dir() / "data" / "mini" / "config.json");
  cfg.out_dir = gp_test::scratch("acceptance_mini");
  pipeline::run_ingest(cfg);
  pipeline::run_pairs(cfg);
  const auto rep = pipeline::run_split(cfg).summary.at("report");
  // Hand-enumerated from data/mini/dump.tsv.
  const std::size_t want[4] = {12, 14, 5, 6};
  const std::size_t got[4] = {rep.at("train").at("true"), rep.at("train").at("false"), rep.at("test").at("true"),
                              rep.at("test").at("false")};
  std::ostringstream d;
  d << "train " << got[0] << "/" << got[1] << ", test " << got[2] << "/" << got[3];
  for (int i = 0; i < 4; ++i) expect(got[i] == want[i], d.str() + ", expected 12/14 and 5/6");
  return d.str() + " (published full-scale counts are reference only)";
}

// --- string metrics ---------------------------------------------------------

std::string string_oracles() {
  gp_test::Rng rng(4242);
  for (int i = 0; i < 1000; ++i) {
    const auto a = gp_test::arabic_word(rng, 0, 10);
    const auto b = gp_test::arabic_word(rng, 0, 10);
    expect(text::levenshtein(a, b) == gp_test::levenshtein_oracle(utf8::decode(a), utf8::decode(b)),
           "levenshtein mismatch on '" + a + "' / '" + b + "'");
  }
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = gp_test::arabic_word(rng, 1, 10, 20);
    const auto b = gp_test::arabic_word(rng, 1, 10, 20);
    const double got = text::char_cosine(a, b);
    const double want = gp_test::cosine_oracle(utf8::decode(text::undiacritize(a)), utf8::decode(text::undiacritize(b)));
    worst = std::max(worst, std::abs(got - want));
  }
  expect(worst < 1e-9, "cosine deviates by " + std::to_string(worst));
  // {b:1} against {b:3, t:2, th:1, j:1, h:1}: 3 / sqrt(16)
  expect(text::char_cosine("ب", "بببتتثجح") == 0.75, "boundary fixture is not exactly 0.75");
  expect(!annotate::method_cosine("ب", "نص بببتتثجح").has_value(), "score of exactly 0.75 accepted");
  expect(annotate::method_cosine("ب", "نص بببتتثج").has_value(), "score above 0.75 rejected");
  char buf[64];
  std::snprintf(buf, sizeof buf, "1000 levenshtein pairs exact, cosine max error %.1e", worst);
  return std::string(buf) + ", 0.75 rejected";
}

// --- target annotation ------------------------------------------------------

std::string target_fixtures() {
  const auto table = annotate::LemmaTable::load(gp_test::fixture("targets_lemmas.tsv"));
  const auto fixtures = gp_test::load_target_fixtures();
  expect(fixtures.size() == 50, "fixture has " + std::to_string(fixtures.size()) + " contexts");
  std::size_t eligible = 0, multi = 0;
  for (const auto& f : fixtures) {
    const auto a = annotate::annotate_context(f.id, f.lemma_key, f.context, table);
    expect(a.multi_occurrence == f.multi, f.id + ": multi-occurrence flag wrong");
    multi += f.multi;
    const auto gold = std::find_if(a.candidates.begin(), a.candidates.end(),
                                   [&](const auto& c) { return c.token_index == f.gold; });
    if (gold == a.candidates.end() || gold->method_hits.size() < 2) continue;
    ++eligible;
    expect(a.chosen_index == f.gold, f.id + ": top-1 is not the gold token");
  }
  return std::to_string(eligible) + "/50 contexts with >=2 methods on gold, all top-1; " + std::to_string(multi) +
         " repeated-word contexts flagged";
}

// --- tagging ----------------------------------------------------------------

std::string tagging_fixtures() {
  const auto f = gp_test::load_tagging_fixture();
  expect(f.pairs.size() == 20, "fixture has " + std::to_string(f.pairs.size()) + " pairs");
  const auto& camel = text::builtin_profile("camel");
  std::size_t roundtrips = 0;
  for (const auto id : {tagging::VariationId::V1, tagging::VariationId::V2, tagging::VariationId::V3,
                        tagging::VariationId::V4}) {
    const auto& v = tagging::SignalVariation::get(id);
    const auto corpus = tagging::render_corpus(f.pairs, f.annotations, v, camel, gp_test::kTaggingMaxLen);
    const auto golden = gp_test::slurp(gp_test::fixture("tagging") / ("golden." + v.name() + ".jsonl"));
    expect(records::to_jsonl(corpus.instances) == golden, v.name() + ": differs from golden file");
    for (std::size_t i = 0; i < corpus.instances.size(); ++i) {
      const auto& inst = corpus.instances[i];
      expect(gp_test::occurrences(inst.sequence, std::string(tagging::kSeparator)) == 1,
             v.name() + " " + inst.pair_id + ": separator count != 1");
      if (inst.truncated) continue;
      const auto [ctx, gloss] = tagging::strip_signals(inst, v);
      const auto& p = f.pairs[i];
      expect(ctx == camel.apply(std::string_view(p.context_text)) && gloss == camel.apply(std::string_view(p.gloss_text)),
             v.name() + " " + inst.pair_id + ": strip_signals does not round-trip");
      ++roundtrips;
    }
  }
  return "4 variations byte-exact, " + std::to_string(roundtrips) + " untruncated round-trips, one [SEP] each";
}

// --- evaluator --------------------------------------------------------------

std::string evaluator_table() {
  const auto t0 = Clock::now();
  const gp_test::RoundedRow row{81, 66, 72, 85, 93, 89, 84};
  const auto sols = gp_test::search_confusions(15172, row);
  expect(!sols.empty(), "no integer matrix reproduces the row");
  const auto m = gp_test::closest_to(sols, 4738);

  std::vector<ContextGlossPair> gold;
  std::vector<eval::Prediction> preds;
  std::size_t n = 0;
  auto add = [&](std::int64_t count, Label truth, Label predicted) {
    for (std::int64_t i = 0; i < count; ++i) {
      ContextGlossPair p;
      p.pair_id = "t" + std::to_string(n++);
      p.label = truth;
      preds.push_back({p.pair_id, predicted, std::nullopt});
      gold.push_back(std::move(p));
    }
  };
  add(m.tp, Label::True, Label::True);
  add(m.fn, Label::True, Label::False);
  add(m.fp, Label::False, Label::True);
  add(m.tn, Label::False, Label::False);

  // Through the on-disk prediction format, as an external trainer would supply it.
  const auto dir = gp_test::scratch("acceptance_eval");
  records::write_jsonl(dir / "preds.jsonl", preds);
  const auto loaded = records::read_jsonl<eval::Prediction>(dir / "preds.jsonl", &records::prediction_from_json);
  const auto r = eval::evaluate(gold, loaded);
  using eval::round_half_up;
  const long got[7] = {round_half_up(r.true_class.precision), round_half_up(r.true_class.recall),
                       round_half_up(r.true_class.f1),        round_half_up(r.false_class.precision),
                       round_half_up(r.false_class.recall),   round_half_up(r.false_class.f1),
                       round_half_up(r.accuracy)};
  const long want[7] = {81, 66, 72, 85, 93, 89, 84};
  std::ostringstream d;
  d << "matrix tp/fn/fp/tn=" << m.tp << "/" << m.fn << "/" << m.fp << "/" << m.tn << " of " << sols.size()
    << " candidates, rounded";
  for (long g : got) d << " " << g;
  for (int i = 0; i < 7; ++i) expect(got[i] == want[i], d.str());
  const double s = seconds_since(t0);
  expect(s < 1.0, d.str() + ", took " + fmt_seconds(s) + ", limit 1s");
  return d.str() + ", " + fmt_seconds(s);
}

// --- determinism ------------------------------------------------------------

int run_cli(const std::string& args) {
  const std::string cmd = "'" + g_cli + "' " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

void run_chain(const fs::path& dir) {
  const std::string base =
      "--config '" + (gp_test::source_dir() / "data/mini/config.json").string() + "' --out-dir '" + dir.string() + "' ";
  for (const char* stage : {"ingest", "pairs", "annotate", "split"}) {
    expect(run_cli(base + stage) == 0, std::string("cli ") + stage + " failed");
  }
  for (const char* v : {"v1", "v2", "v3", "v4"}) {
    expect(run_cli(base + "--variation " + v + " tag") == 0, std::string("cli tag ") + v + " failed");
  }
  for (const char* stage : {"stats", "baseline", "eval"}) {
    expect(run_cli(base + stage) == 0, std::string("cli ") + stage + " failed");
  }
}

std::map<std::string, std::string> hash_tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file()) out[e.path().filename().string()] = hashing::sha256_file(e.path());
  }
  return out;
}

std::map<std::string, records::Json> manifest_outputs(const fs::path& dir) {
  std::map<std::string, records::Json> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (name.rfind("manifest.", 0) == 0) out[name] = records::read_json(e.path()).at("outputs");
  }
  return out;
}

std::string determinism() {
  if (g_cli.empty()) throw Failure{"no CLI path given"};
  const auto a = gp_test::scratch("acceptance_det_a");
  run_chain(a);
  const auto first = hash_tree(a);
  fs::remove_all(a);
  fs::create_directories(a);
  run_chain(a);
  const auto second = hash_tree(a);
  expect(first == second, "rerun in the same directory changed bytes");

  const auto b = gp_test::scratch("acceptance_det_b");
  run_chain(b);
  const auto other = hash_tree(b);
  std::size_t compared = 0;
  for (const auto& [name, h] : first) {
    if (name.rfind("manifest.", 0) == 0) continue;
    expect(other.count(name) && other.at(name) == h, name + " differs across output directories");
    ++compared;
  }
  expect(manifest_outputs(a) == manifest_outputs(b), "manifest output hashes differ across directories");
  return std::to_string(first.size()) + " files byte-identical on rerun, " + std::to_string(compared) +
         " artifacts and all manifest hashes equal in a second directory";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli = argv[1];
  const std::vector<std::pair<const char*, std::function<std::string()>>> criteria = {
      {"false-pair-equivalence", false_pair_equivalence},
      {"split-soundness", split_soundness},
      {"mini-lexicon-split-counts", mini_split_counts},
      {"string-metric-oracles", string_oracles},
      {"target-annotation-fixtures", target_fixtures},
      {"tagging-fixtures", tagging_fixtures},
      {"evaluator-table-arithmetic", evaluator_table},
      {"determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    std::string status = "PASS", detail;
    try {
      detail = fn();
    } catch (const Failure& f) {
      status = "FAIL";
      detail = f.what;
    } catch (const std::exception& e) {
      status = "FAIL";
      detail = std::string("exception: ") + e.what();
    }
    if (status == "FAIL") ++failures;
    std::printf("%s %s: %s\n", status.c_str(), name, detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
