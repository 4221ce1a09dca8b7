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

// HTTP JSON service over an annotation store, for the review UI.

#pragma once

#include <memory>
#include <string>

#include "glosspair/glosspair.h"

namespace glosspair::review {

struct ServerOptions {
  std::string annotations;
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::string ui_dir;
};

class ServerError : public std::exception {
 public:
  ServerError(gp_status status, std::string message) : status_(status), message_(std::move(message)) {}
  gp_status status() const noexcept { return status_; }
  const char* what() const noexcept override { return message_.c_str(); }

 private:
  gp_status status_;
  std::string message_;
};

/// HTTP status for a store failure.
int http_status_for(gp_status status) noexcept;

class ReviewServer {
 public:
  /// Opens the store. Throws ServerError.
  explicit ReviewServer(ServerOptions options);
  ~ReviewServer();
  ReviewServer(const ReviewServer&) = delete;
  ReviewServer& operator=(const ReviewServer&) = delete;

  /// Binds the socket and returns the bound port. Throws ServerError(GP_ERR_IO).
  int bind();
  /// Serves until stop(). bind() must have succeeded.
  void serve();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace glosspair::review
