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

#include "core/annotation_store.hpp"

#include <fstream>

#include "core/error.hpp"
#include "core/records.hpp"

namespace glosspair::annotate {

AuditEntry apply_review(ContextAnnotation& a, const ReviewDecision& decision, const std::string& reviewer) {
  if (reviewer.empty()) throw Error(ErrorCode::InvalidArgument, "reviewer is required");
  AuditEntry entry;
  entry.reviewer = reviewer;
  entry.previous_index = a.chosen_index;
  entry.previous_status = a.status;

  if (decision.kind == ReviewDecision::Kind::Confirm) {
    if (!a.chosen_index) {
      throw Error(ErrorCode::InvalidArgument, "context " + a.context_id + " has no target to confirm; use correct");
    }
    entry.action = "confirm";
    a.status = Status::Verified;
  } else {
    if (!decision.token_index) throw Error(ErrorCode::InvalidArgument, "correct needs a token_index");
    const std::size_t n = text::tokenize(a.context_text).size();
    if (*decision.token_index >= n) {
      throw Error(ErrorCode::OutOfRange, "token_index " + std::to_string(*decision.token_index) + " outside " +
                                             std::to_string(n) + " tokens of " + a.context_id);
    }
    entry.action = "correct";
    a.chosen_index = decision.token_index;
    a.status = Status::Corrected;
  }
  entry.new_index = a.chosen_index;
  entry.revision = ++a.revision;
  a.audit.push_back(entry);
  return entry;
}

std::filesystem::path audit_path_for(const std::filesystem::path& annotations) {
  auto p = annotations;
  p.replace_extension();
  p += ".audit.jsonl";
  return p;
}

AnnotationStore::AnnotationStore(std::filesystem::path annotations_path)
    : path_(std::move(annotations_path)), audit_path_(audit_path_for(path_)) {
  records::for_each_jsonl(path_, [&](const records::Json& j) {
    auto a = records::annotation_from_json(j);
    const std::string id = a.context_id;
    if (!items_.emplace(id, std::move(a)).second) {
      throw Error(ErrorCode::Format, "duplicate annotation for context " + id);
    }
  });
}

ContextAnnotation AnnotationStore::review(const std::string& context_id, const ReviewDecision& decision,
                                          const std::string& reviewer, std::optional<std::uint64_t> expected_revision) {
  std::lock_guard lock(mu_);
  const auto it = items_.find(context_id);
  if (it == items_.end()) throw Error(ErrorCode::NotFound, "unknown context " + context_id);
  if (expected_revision && *expected_revision != it->second.revision) {
    throw Error(ErrorCode::Conflict, "context " + context_id + " is at revision " +
                                         std::to_string(it->second.revision) + ", client has " +
                                         std::to_string(*expected_revision));
  }
  ContextAnnotation updated = it->second;
  const AuditEntry entry = apply_review(updated, decision, reviewer);
  std::swap(it->second, updated);
  try {
    persist_locked(entry, context_id);
  } catch (...) {
    std::swap(it->second, updated);
    throw;
  }
  return it->second;
}

void AnnotationStore::persist_locked(const AuditEntry& entry, const std::string& context_id) {
  std::string snapshot;
  for (const auto& [_, a] : items_) {
    snapshot += records::to_json(a).dump();
    snapshot.push_back('\n');
  }
  records::write_text_atomic(path_, snapshot);

  records::Json line = records::to_json(entry);
  line["context_id"] = context_id;
  std::ofstream audit(audit_path_, std::ios::binary | std::ios::app);
  if (!audit) throw Error(ErrorCode::Io, "cannot append to " + audit_path_.string());
  audit << line.dump() << '\n';
}

std::optional<ContextAnnotation> AnnotationStore::get(const std::string& context_id) const {
  std::lock_guard lock(mu_);
  const auto it = items_.find(context_id);
  if (it == items_.end()) return std::nullopt;
  return it->second;
}

std::vector<ContextAnnotation> AnnotationStore::queue(const std::vector<Status>& statuses, std::size_t limit) const {
  const std::vector<Status> wanted = statuses.empty() ? std::vector<Status>{Status::Pending, Status::Auto} : statuses;
  std::lock_guard lock(mu_);
  std::vector<const ContextAnnotation*> picked;
  for (const auto& [_, a] : items_) {
    if (std::find(wanted.begin(), wanted.end(), a.status) != wanted.end()) picked.push_back(&a);
  }
  sort_review_queue(picked);
  if (limit != 0 && picked.size() > limit) picked.resize(limit);
  std::vector<ContextAnnotation> out;
  out.reserve(picked.size());
  for (const auto* a : picked) out.push_back(*a);
  return out;
}

std::map<Status, std::size_t> AnnotationStore::progress() const {
  std::map<Status, std::size_t> counts{
      {Status::Pending, 0}, {Status::Auto, 0}, {Status::Verified, 0}, {Status::Corrected, 0}};
  std::lock_guard lock(mu_);
  for (const auto& [_, a] : items_) ++counts[a.status];
  return counts;
}

std::size_t AnnotationStore::size() const {
  std::lock_guard lock(mu_);
  return items_.size();
}

}  // namespace glosspair::annotate
