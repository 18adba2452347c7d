// Copyright 2026 The cpabe-enclave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cpabe/service/http_server.hpp"

#include <httplib.h>

#include <ctime>
#include <iostream>
#include <thread>

#include <nlohmann/json.hpp>

namespace cpabe::service {
namespace {

using nlohmann::json;

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view message) {
  send_json(res, status, {{"error", message}});
}

std::string iso8601(std::chrono::system_clock::time_point t) {
  auto secs = std::chrono::system_clock::to_time_t(t);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count() %
            1000;
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03lldZ", buf, static_cast<long long>(ms));
  return out;
}

std::string quote_filename(const std::string& name) {
  std::string out;
  for (char c : name) out += (c == '"' || c == '\\') ? '_' : c;
  return out;
}

// Runs `fn`, turning ServiceError into its status and anything else into 500.
template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const ServiceError& e) {
    send_error(res, e.status(), e.what());
  } catch (const std::exception& e) {
    std::cerr << "request failed: " << e.what() << "\n";
    send_error(res, 500, "internal error");
  }
}

}  // namespace

struct HttpServer::Impl {
  FileService& service;
  httplib::Server server;
  std::thread thread;

  explicit Impl(FileService& s) : service(s) {}
};

HttpServer::HttpServer(FileService& service) : impl_(std::make_unique<Impl>(service)) {
  auto& srv = impl_->server;
  auto& svc = impl_->service;

  // Multipart framing adds a little on top of the file itself.
  srv.set_payload_max_length(static_cast<std::size_t>(svc.config().max_upload_bytes) + (1u << 20));

  srv.Post("/encrypt-sgx", [&svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      if (!req.is_multipart_form_data() || !req.has_file("file")) {
        throw ServiceError(400, "expected multipart field \"file\"");
      }
      const auto& part = req.get_file_value("file");
      auto stored = svc.encrypt(part.filename, Bytes(part.content.begin(), part.content.end()));
      send_json(res, 200,
                {{"file_id", stored.file_id}, {"filename", stored.filename}, {"size", stored.size}});
    });
  });

  srv.Post("/decrypt-sgx", [&svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      json body = json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.is_object() || !body.contains("file_id") ||
          !body["file_id"].is_string() || !body.contains("attributes") ||
          !body["attributes"].is_array()) {
        throw ServiceError(400, "expected {\"file_id\": string, \"attributes\": [string]}");
      }
      std::vector<std::string> attrs;
      for (const auto& a : body["attributes"]) {
        if (!a.is_string()) throw ServiceError(400, "attributes must be strings");
        attrs.push_back(a.get<std::string>());
      }
      auto token = svc.decrypt(body["file_id"].get<std::string>(), attrs);
      send_json(res, 200, {{"download_token", token}});
    });
  });

  srv.Get("/files", [&svc](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      json list = json::array();
      for (const auto& f : svc.files()) {
        list.push_back({{"file_id", f.file_id},
                        {"filename", f.filename},
                        {"size", f.size},
                        {"created", iso8601(f.created)}});
      }
      send_json(res, 200, list);
    });
  });

  srv.Get(R"(/download/([^/]+))", [&svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto d = svc.download(req.matches[1].str());
      res.set_header("Content-Disposition",
                     "attachment; filename=\"" + quote_filename(d.filename) + "\"");
      res.set_content(to_string(d.content), "application/octet-stream");
    });
  });

  srv.Get("/attributes", [&svc](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, {{"attributes", svc.attributes()}}); });
  });

  srv.Get("/health", [&svc](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, {{"ready", svc.ready()}, {"policy", svc.policy_text()}});
  });

  if (!svc.config().web_root.empty()) {
    if (!srv.set_mount_point("/", svc.config().web_root.string())) {
      fail(Errc::kIoError, "web root not found: " + svc.config().web_root.string());
    }
  }
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                        : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) fail(Errc::kIoError, "cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::serve() { impl_->server.listen_after_bind(); }

int HttpServer::start(const std::string& host, int port) {
  int bound = bind(host, port);
  impl_->thread = std::thread([this] { serve(); });
  impl_->server.wait_until_ready();
  return bound;
}

void HttpServer::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace cpabe::service
