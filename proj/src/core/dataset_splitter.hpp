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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "core/pair_builder.hpp"

namespace glosspair::split {

struct SplitCounts {
  std::size_t train_true = 0;
  std::size_t train_false = 0;
  std::size_t test_true = 0;
  std::size_t test_false = 0;

  std::size_t train_total() const noexcept { return train_true + train_false; }
  std::size_t test_total() const noexcept { return test_true + test_false; }
  bool operator==(const SplitCounts&) const = default;
};

struct SplitResult {
  std::vector<std::string> train;  // pair_ids, sorted
  std::vector<std::string> test;   // pair_ids, sorted
  std::uint64_t seed = 0;
  SplitCounts report;
};

/// Moves one seeded-uniform True pair out of every gloss with two or more
/// contexts into test, adds the False pairs of those test contexts, and
/// leaves everything else in train. Throws Error(EmptyTest) when no gloss has
/// two contexts.
SplitResult split(const std::vector<pairs::ContextGlossPair>& pairs, std::uint64_t seed);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Verification {
  std::vector<Check> checks;
  bool passed() const noexcept;
};

/// Re-derives every split property from the pairs alone.
Verification verify_split(const std::vector<pairs::ContextGlossPair>& pairs, const SplitResult& result);

/// Unbiased draw in [0, n) from a 64-bit Mersenne Twister; the result depends
/// only on the engine state, not on the standard library's distributions.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n);

}  // namespace glosspair::split
