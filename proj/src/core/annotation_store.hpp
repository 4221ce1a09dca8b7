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
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "core/target_annotator.hpp"

namespace glosspair::annotate {

struct ReviewDecision {
  enum class Kind { Confirm, Correct };
  Kind kind = Kind::Confirm;
  std::optional<std::size_t> token_index;  // required for Correct

  static ReviewDecision confirm() { return {Kind::Confirm, std::nullopt}; }
  static ReviewDecision correct(std::size_t index) { return {Kind::Correct, index}; }
};

/// Applies a linguist decision in place. Candidates are never touched; the
/// revision is bumped and an audit entry appended. Throws Error(OutOfRange)
/// for a token index past the end of the context and Error(InvalidArgument)
/// for a confirm without a current choice or an empty reviewer.
AuditEntry apply_review(ContextAnnotation& annotation, const ReviewDecision& decision, const std::string& reviewer);

/// "<dir>/annotations.jsonl" -> "<dir>/annotations.audit.jsonl".
std::filesystem::path audit_path_for(const std::filesystem::path& annotations);

/// File-backed annotation set shared by concurrent reviewers. Every mutation
/// rewrites the snapshot atomically and appends to the audit log while holding
/// the store lock, so writes are serialized in arrival order.
class AnnotationStore {
 public:
  explicit AnnotationStore(std::filesystem::path annotations_path);

  AnnotationStore(const AnnotationStore&) = delete;
  AnnotationStore& operator=(const AnnotationStore&) = delete;

  /// Throws Error(NotFound) for an unknown id and Error(Conflict) when
  /// `expected_revision` is given and differs from the stored revision.
  ContextAnnotation review(const std::string& context_id, const ReviewDecision& decision, const std::string& reviewer,
                           std::optional<std::uint64_t> expected_revision = std::nullopt);

  std::optional<ContextAnnotation> get(const std::string& context_id) const;

  /// Items in review-queue order. An empty filter means PENDING and AUTO;
  /// a zero limit means no limit.
  std::vector<ContextAnnotation> queue(const std::vector<Status>& statuses, std::size_t limit) const;

  std::map<Status, std::size_t> progress() const;
  std::size_t size() const;

 private:
  void persist_locked(const AuditEntry& entry, const std::string& context_id);

  std::filesystem::path path_;
  std::filesystem::path audit_path_;
  mutable std::mutex mu_;
  std::map<std::string, ContextAnnotation> items_;
};

}  // namespace glosspair::annotate
