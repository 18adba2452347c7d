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

#include "cpabe/attestation/http.hpp"

#include <httplib.h>

#include <thread>

namespace cpabe::attestation {
namespace {

constexpr const char* kOctets = "application/octet-stream";

std::string framed(ByteView payload) {
  ByteWriter w;
  w.field(payload);
  return to_string(w.view());
}

Bytes unframe_single(std::string_view body, Errc code) {
  ByteReader r(as_bytes(body), code);
  auto f = r.field();
  r.expect_done();
  return {f.begin(), f.end()};
}

httplib::Client make_client(const std::string& base_url) {
  httplib::Client client(base_url);
  client.set_connection_timeout(std::chrono::seconds(5));
  client.set_read_timeout(std::chrono::seconds(30));
  return client;
}

}  // namespace

struct VerifierHttpServer::Impl {
  std::shared_ptr<PolicyAuthority> authority;
  httplib::Server server;
  std::thread thread;
};

VerifierHttpServer::VerifierHttpServer(std::shared_ptr<PolicyAuthority> authority)
    : impl_(std::make_unique<Impl>()) {
  impl_->authority = std::move(authority);
  auto* impl = impl_.get();

  impl->server.Post("/attest/challenge", [impl](const httplib::Request&, httplib::Response& res) {
    res.set_content(framed(impl->authority->challenge().encode()), kOctets);
  });

  impl->server.Post("/attest/quote", [impl](const httplib::Request& req, httplib::Response& res) {
    try {
      ByteReader r(as_bytes(req.body), Errc::kMalformedQuote);
      auto challenge = AttestationChallenge::decode(r.field());
      auto quote = Quote::decode(r.field());
      r.expect_done();
      auto response = impl->authority->attest(challenge, quote);
      res.set_content(framed(response.encode()), kOctets);
    } catch (const Error& e) {
      res.status = e.code() == Errc::kNotAttested ? 403 : 400;
      res.set_content(e.what(), "text/plain");
    }
  });
}

VerifierHttpServer::~VerifierHttpServer() { stop(); }

int VerifierHttpServer::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                        : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) fail(Errc::kIoError, "cannot bind verifier to " + host + ":" + std::to_string(port));
  return bound;
}

void VerifierHttpServer::serve() { impl_->server.listen_after_bind(); }

int VerifierHttpServer::start(const std::string& host, int port) {
  int bound = bind(host, port);
  impl_->thread = std::thread([this] { serve(); });
  impl_->server.wait_until_ready();
  return bound;
}

void VerifierHttpServer::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

HttpVerifierTransport::HttpVerifierTransport(std::string base_url)
    : base_url_(std::move(base_url)) {}

AttestationChallenge HttpVerifierTransport::request_challenge() {
  auto client = make_client(base_url_);
  auto res = client.Post("/attest/challenge", "", kOctets);
  if (!res) fail(Errc::kIoError, "verifier unreachable: " + httplib::to_string(res.error()));
  if (res->status != 200) fail(Errc::kIoError, "verifier answered " + std::to_string(res->status));
  return AttestationChallenge::decode(unframe_single(res->body, Errc::kMalformedQuote));
}

ProvisioningResponse HttpVerifierTransport::submit_quote(const AttestationChallenge& challenge,
                                                         const Quote& quote) {
  auto client = make_client(base_url_);
  auto body = encode_quote_submission(challenge, quote);
  auto res = client.Post("/attest/quote", to_string(body), kOctets);
  if (!res) fail(Errc::kIoError, "verifier unreachable: " + httplib::to_string(res.error()));
  if (res->status == 403) fail(Errc::kNotAttested, res->body);
  if (res->status != 200) fail(Errc::kIoError, "verifier answered " + std::to_string(res->status));
  return ProvisioningResponse::decode(unframe_single(res->body, Errc::kProvisioningFailure));
}

}  // namespace cpabe::attestation
