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

#include "review_server.hpp"

#include <cstdlib>
#include <optional>
#include <string>

#include "httplib.h"
#include "json.hpp"

namespace glosspair::review {

namespace {

using Json = nlohmann::ordered_json;

struct Owned {
  char* p = nullptr;
  ~Owned() { gp_string_free(p); }
};

void send_json(httplib::Response& res, int status, const std::string& body) {
  res.status = status;
  res.set_content(body, "application/json");
}

void send_error(httplib::Response& res, gp_status status, const std::string& message) {
  send_json(res, http_status_for(status), Json{{"error", gp_status_name(status)}, {"message", message}}.dump());
}

void send_result(httplib::Response& res, gp_status status, const Owned& out) {
  if (status == GP_OK) {
    send_json(res, 200, out.p);
  } else {
    send_error(res, status, gp_last_error());
  }
}

}  // namespace

int http_status_for(gp_status status) noexcept {
  switch (status) {
    case GP_OK: return 200;
    case GP_ERR_NOT_FOUND: return 404;
    case GP_ERR_CONFLICT: return 409;
    case GP_ERR_INVALID_ARGUMENT:
    case GP_ERR_OUT_OF_RANGE:
    case GP_ERR_FORMAT: return 400;
    default: return 500;
  }
}

struct ReviewServer::Impl {
  ServerOptions options;
  gp_store* store = nullptr;
  httplib::Server http;
  int port = -1;

  ~Impl() { gp_store_close(store); }

  void routes() {
    http.Get("/api/queue", [this](const httplib::Request& req, httplib::Response& res) {
      std::size_t limit = 0;
      if (req.has_param("limit")) {
        const std::string raw = req.get_param_value("limit");
        char* end = nullptr;
        const long v = std::strtol(raw.c_str(), &end, 10);
        if (raw.empty() || *end != '\0' || v < 0) {
          send_error(res, GP_ERR_INVALID_ARGUMENT, "limit must be a non-negative integer");
          return;
        }
        limit = static_cast<std::size_t>(v);
      }
      const std::string status = req.has_param("status") ? req.get_param_value("status") : "";
      Owned out;
      send_result(res, gp_store_queue(store, status.c_str(), limit, &out.p), out);
    });

    http.Get(R"(/api/contexts/([A-Za-z0-9_.\-]+))", [this](const httplib::Request& req, httplib::Response& res) {
      Owned out;
      send_result(res, gp_store_context(store, req.matches[1].str().c_str(), &out.p), out);
    });

    http.Post(R"(/api/contexts/([A-Za-z0-9_.\-]+)/annotation)",
              [this](const httplib::Request& req, httplib::Response& res) {
                Json body;
                try {
                  body = Json::parse(req.body);
                } catch (const Json::parse_error& e) {
                  send_error(res, GP_ERR_INVALID_ARGUMENT, std::string("body is not JSON: ") + e.what());
                  return;
                }
                long token_index = -1;
                long revision = -1;
                std::string action, reviewer;
                try {
                  if (!body.is_object()) throw std::invalid_argument("body must be an object");
                  action = body.at("action").get<std::string>();
                  reviewer = body.value("reviewer", std::string());
                  if (body.contains("token_index") && !body["token_index"].is_null()) {
                    token_index = body["token_index"].get<long>();
                    if (token_index < 0) throw std::invalid_argument("token_index must be non-negative");
                  }
                  if (body.contains("revision") && !body["revision"].is_null()) {
                    revision = body["revision"].get<long>();
                  }
                } catch (const std::exception& e) {
                  send_error(res, GP_ERR_INVALID_ARGUMENT, e.what());
                  return;
                }
                Owned out;
                const gp_status st = gp_store_review(store, req.matches[1].str().c_str(), action.c_str(), token_index,
                                                     reviewer.c_str(), revision, &out.p);
                send_result(res, st, out);
              });

    http.Get("/api/progress", [this](const httplib::Request&, httplib::Response& res) {
      Owned out;
      send_result(res, gp_store_progress(store, &out.p), out);
    });

    http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) {
        res.set_content(Json{{"error", "E_HTTP"}, {"status", res.status}}.dump(), "application/json");
      }
    });
  }
};

ReviewServer::ReviewServer(ServerOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  const gp_status st = gp_store_open(impl_->options.annotations.c_str(), &impl_->store);
  if (st != GP_OK) throw ServerError(st, gp_last_error());
  impl_->routes();
  if (!impl_->options.ui_dir.empty() && !impl_->http.set_mount_point("/", impl_->options.ui_dir)) {
    throw ServerError(GP_ERR_IO, "ui directory not found: " + impl_->options.ui_dir);
  }
}

ReviewServer::~ReviewServer() { stop(); }

int ReviewServer::bind() {
  auto& o = impl_->options;
  if (o.port == 0) {
    impl_->port = impl_->http.bind_to_any_port(o.host);
  } else {
    impl_->port = impl_->http.bind_to_port(o.host, o.port) ? o.port : -1;
  }
  if (impl_->port < 0) throw ServerError(GP_ERR_IO, "cannot bind " + o.host + ":" + std::to_string(o.port));
  return impl_->port;
}

void ReviewServer::serve() { impl_->http.listen_after_bind(); }

void ReviewServer::stop() {
  if (impl_) impl_->http.stop();
}

}  // namespace glosspair::review
