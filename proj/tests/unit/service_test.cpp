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

#include <gtest/gtest.h>
#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "cpabe/abe/container.hpp"
#include "cpabe/attestation/http.hpp"
#include "cpabe/common/crypto.hpp"
#include "cpabe/common/file_io.hpp"
#include "cpabe/service/http_server.hpp"

namespace cpabe::service {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kRule = "designation:professor department:cs file-type:pdf 3of3";
const std::vector<std::string> kAll = {"designation:professor", "department:cs", "file-type:pdf"};

fs::path temp_dir() {
  auto p = fs::temp_directory_path() / ("cpabe-svc-" + to_hex(crypto::random_bytes(6)));
  fs::create_directories(p);
  return p;
}

// Files under `root` whose bytes contain `needle`.
std::vector<fs::path> files_containing(const fs::path& root, ByteView needle) {
  std::vector<fs::path> hits;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file() && contains(read_file(e.path()), needle)) hits.push_back(e.path());
  }
  return hits;
}

std::size_t count_files(const fs::path& dir) {
  return static_cast<std::size_t>(std::distance(fs::directory_iterator(dir), fs::directory_iterator()));
}

class Running {
 public:
  explicit Running(ServiceConfig config, std::optional<VerifierLink> link = std::nullopt)
      : service(std::move(config), std::move(link)), http(service) {
    service.start();
    port = http.start("127.0.0.1", 0);
  }

  httplib::Client client() const { return httplib::Client("127.0.0.1", port); }

  httplib::Result upload(const std::string& name, const std::string& content) const {
    httplib::MultipartFormDataItems items = {{"file", content, name, "application/octet-stream"}};
    return client().Post("/encrypt-sgx", items);
  }

  httplib::Result decrypt(const std::string& id, const std::vector<std::string>& attrs) const {
    json body = {{"file_id", id}, {"attributes", attrs}};
    return client().Post("/decrypt-sgx", body.dump(), "application/json");
  }

  FileService service;
  HttpServer http;
  int port = 0;
};

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = temp_dir();
    config_.storage_dir = dir_;
    config_.policy = kRule;
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
  ServiceConfig config_;
};

TEST_F(ServiceTest, UploadStoresContainer) {
  Running svc(config_);
  auto payload = to_string(crypto::random_bytes(500 * 1024));
  auto res = svc.upload("report.pdf", payload);
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200) << res->body;
  auto body = json::parse(res->body);
  EXPECT_EQ(body["filename"], "report.pdf");
  EXPECT_EQ(body["size"], payload.size());
  auto id = body["file_id"].get<std::string>();
  EXPECT_EQ(id.size(), 32u);
  auto path = dir_ / "containers" / (id + ".cpsx");
  ASSERT_TRUE(fs::exists(path));
  EXPECT_EQ(abe::CiphertextContainer::decode(read_file(path)).policy_text, kRule);
  EXPECT_TRUE(files_containing(dir_, as_bytes(payload.substr(1000, 64))).empty());
}

TEST_F(ServiceTest, UploadBeforeProvisioningIsNotReady) {
  config_.policy.clear();
  Running svc(config_);
  EXPECT_FALSE(svc.service.ready());
  auto res = svc.upload("a.txt", "hello");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 503);
  EXPECT_NE(res->body.find("NotReady"), std::string::npos);
}

TEST_F(ServiceTest, EmptyAndOversizedUploads) {
  config_.max_upload_bytes = 4096;
  Running svc(config_);
  EXPECT_EQ(svc.upload("empty", "")->status, 400);
  EXPECT_EQ(svc.upload("big", std::string(4097, 'x'))->status, 413);
  EXPECT_EQ(svc.upload("huge", std::string(3 << 20, 'x'))->status, 413);
  EXPECT_EQ(svc.upload("ok", std::string(4096, 'x'))->status, 200);
  auto res = svc.client().Post("/encrypt-sgx", "raw", "text/plain");
  EXPECT_EQ(res->status, 400);
}

TEST_F(ServiceTest, DecryptAndSingleUseDownload) {
  Running svc(config_);
  auto payload = to_string(crypto::random_bytes(500 * 1024));
  auto id = json::parse(svc.upload("r.bin", payload)->body)["file_id"].get<std::string>();

  auto res = svc.decrypt(id, kAll);
  ASSERT_EQ(res->status, 200) << res->body;
  auto token = json::parse(res->body)["download_token"].get<std::string>();
  EXPECT_EQ(count_files(dir_ / "staging"), 1u);

  auto dl = svc.client().Get("/download/" + token);
  ASSERT_EQ(dl->status, 200);
  EXPECT_EQ(dl->body, payload);
  EXPECT_NE(dl->get_header_value("Content-Disposition").find("r.bin"), std::string::npos);
  EXPECT_EQ(count_files(dir_ / "staging"), 0u);
  EXPECT_EQ(svc.client().Get("/download/" + token)->status, 410);
  EXPECT_TRUE(files_containing(dir_, as_bytes(payload.substr(5000, 64))).empty());
}

TEST_F(ServiceTest, MissingAttributeIsForbidden) {
  Running svc(config_);
  auto id = json::parse(svc.upload("r.bin", "secret bytes")->body)["file_id"].get<std::string>();
  auto res = svc.decrypt(id, {"designation:professor", "file-type:pdf"});
  EXPECT_EQ(res->status, 403);
  EXPECT_EQ(count_files(dir_ / "staging"), 0u);
  // Normalization happens before the enclave sees the set.
  EXPECT_EQ(svc.decrypt(id, {"Designation:Professor", "DEPARTMENT:cs", "file-type:PDF"})->status,
            200);
}

TEST_F(ServiceTest, BadRequests) {
  Running svc(config_);
  auto id = json::parse(svc.upload("r.bin", "x")->body)["file_id"].get<std::string>();
  EXPECT_EQ(svc.decrypt(std::string(32, 'a'), kAll)->status, 404);
  EXPECT_EQ(svc.decrypt("../../etc/passwd", kAll)->status, 404);
  EXPECT_EQ(svc.decrypt(id, {})->status, 400);
  EXPECT_EQ(svc.decrypt(id, {"2of3"})->status, 400);
  EXPECT_EQ(svc.client().Post("/decrypt-sgx", "{not json", "application/json")->status, 400);
  EXPECT_EQ(svc.client().Post("/decrypt-sgx", R"({"file_id": 3})", "application/json")->status,
            400);
  EXPECT_EQ(svc.client().Get("/download/" + to_hex(crypto::random_bytes(16)))->status, 404);
  EXPECT_EQ(svc.client().Get("/download/nope")->status, 404);
}

TEST_F(ServiceTest, CorruptContainerIsAudited) {
  Running svc(config_);
  auto id = json::parse(svc.upload("r.bin", "payload")->body)["file_id"].get<std::string>();
  auto path = dir_ / "containers" / (id + ".cpsx");
  auto bytes = read_file(path);
  bytes.back() ^= 0x01;
  write_file_atomic(path, bytes);
  EXPECT_EQ(svc.decrypt(id, kAll)->status, 500);
  auto log = to_string(read_file(dir_ / "audit.log"));
  EXPECT_NE(log.find("container_corrupt"), std::string::npos);
  EXPECT_NE(log.find(id), std::string::npos);
}

TEST_F(ServiceTest, FilesListedNewestFirst) {
  Running svc(config_);
  auto first = json::parse(svc.upload("one.txt", "1")->body)["file_id"];
  auto second = json::parse(svc.upload("two.txt", "2")->body)["file_id"];
  auto list = json::parse(svc.client().Get("/files")->body);
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(list[0]["file_id"], second);
  EXPECT_EQ(list[1]["file_id"], first);
  EXPECT_EQ(list[0]["filename"], "two.txt");
  EXPECT_GE(list[0]["created"].get<std::string>(), list[1]["created"].get<std::string>());
}

TEST_F(ServiceTest, AttributeVocabulary) {
  Running svc(config_);
  auto body = json::parse(svc.client().Get("/attributes")->body);
  EXPECT_EQ(body["attributes"],
            json({"department:cs", "designation:professor", "file-type:pdf"}));
}

TEST_F(ServiceTest, ExpiredTokenIsGone) {
  config_.token_ttl = std::chrono::seconds(1);
  Running svc(config_);
  auto id = json::parse(svc.upload("r.bin", "payload")->body)["file_id"].get<std::string>();
  auto token = json::parse(svc.decrypt(id, kAll)->body)["download_token"].get<std::string>();
  std::this_thread::sleep_for(std::chrono::milliseconds(1100));
  EXPECT_EQ(svc.client().Get("/download/" + token)->status, 410);
  EXPECT_EQ(count_files(dir_ / "staging"), 0u);
}

TEST_F(ServiceTest, RestartRestoresStateWithoutNewKeys) {
  std::string id;
  Bytes pub, master;
  {
    Running svc(config_);
    id = json::parse(svc.upload("keep.txt", "persisted")->body)["file_id"].get<std::string>();
    pub = read_file(dir_ / "sealed" / "pub.seal");
    master = read_file(dir_ / "sealed" / "master.seal");
    ASSERT_TRUE(fs::exists(dir_ / "sealed" / "policy.seal"));
  }
  // No policy configured now: readiness must come from the sealed policy.
  config_.policy.clear();
  Running svc(config_);
  EXPECT_TRUE(svc.service.ready());
  EXPECT_EQ(read_file(dir_ / "sealed" / "pub.seal"), pub);
  EXPECT_EQ(read_file(dir_ / "sealed" / "master.seal"), master);
  auto list = json::parse(svc.client().Get("/files")->body);
  ASSERT_EQ(list.size(), 1u);
  auto token = json::parse(svc.decrypt(id, kAll)->body)["download_token"].get<std::string>();
  EXPECT_EQ(svc.client().Get("/download/" + token)->body, "persisted");
}

TEST_F(ServiceTest, RemoteVerifierOverHttp) {
  auto platform = enclave::load_or_create_platform(dir_ / "platform" / "device.key",
                                                   dir_ / "platform" / "quoting.key");
  auto key = crypto::Ed25519KeyPair::generate();
  attestation::VerifierConfig vc;
  vc.expected_measurement = enclave::measure("cpabe-enclave", 1);
  vc.quoting_public_key = platform->quoting_key.public_key();
  auto authority = std::make_shared<attestation::PolicyAuthority>(
      std::make_shared<attestation::Verifier>(vc, key), kRule);
  attestation::VerifierHttpServer verifier(authority);
  int vport = verifier.start("127.0.0.1", 0);

  config_.policy.clear();
  config_.verifier_url = "http://127.0.0.1:" + std::to_string(vport);
  config_.verifier_public_key = to_hex(key.public_key());
  Running svc(config_);
  ASSERT_TRUE(svc.service.ready());
  EXPECT_EQ(svc.service.policy_text(), kRule);
  EXPECT_EQ(svc.upload("a", "b")->status, 200);
  verifier.stop();
}

TEST_F(ServiceTest, VerifierExpectingOtherMeasurementLeavesServiceNotReady) {
  auto platform = enclave::load_or_create_platform(dir_ / "platform" / "device.key",
                                                   dir_ / "platform" / "quoting.key");
  auto key = crypto::Ed25519KeyPair::generate();
  attestation::VerifierConfig vc;
  vc.expected_measurement = enclave::measure("cpabe-enclave", 2);
  vc.quoting_public_key = platform->quoting_key.public_key();
  auto authority = std::make_shared<attestation::PolicyAuthority>(
      std::make_shared<attestation::Verifier>(vc, key), kRule);
  VerifierLink link{std::make_shared<attestation::LocalVerifierTransport>(authority),
                    key.public_key()};
  config_.policy.clear();
  Running svc(config_, link);
  EXPECT_FALSE(svc.service.ready());
  EXPECT_EQ(svc.upload("a", "b")->status, 503);
}

TEST_F(ServiceTest, ConcurrentUploads) {
  Running svc(config_);
  constexpr int kClients = 8;
  std::vector<std::thread> threads;
  std::atomic<int> ok{0};
  for (int i = 0; i < kClients; ++i) {
    threads.emplace_back([&, i] {
      auto res = svc.upload("f" + std::to_string(i), std::string(10000 + i, 'a' + i));
      ok += res && res->status == 200;
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(ok.load(), kClients);
  EXPECT_EQ(json::parse(svc.client().Get("/files")->body).size(), static_cast<std::size_t>(kClients));
}

TEST_F(ServiceTest, ConfigFromFileAndEnvironment) {
  auto path = dir_ / "service.json";
  std::ofstream(path) << R"({"port": 9123, "storage_dir": "/tmp/x", "policy": "a b 2of2",
                             "max_upload_bytes": 10, "token_ttl_seconds": 5})";
  auto c = ServiceConfig::from_file(path);
  EXPECT_EQ(c.port, 9123);
  EXPECT_EQ(c.storage_dir, "/tmp/x");
  EXPECT_EQ(c.policy, "a b 2of2");
  EXPECT_EQ(c.max_upload_bytes, 10u);
  EXPECT_EQ(c.token_ttl, std::chrono::seconds(5));
  EXPECT_EQ(c.device_secret(), fs::path("/tmp/x/platform/device.key"));
  ::setenv("CPABE_PORT", "7000", 1);
  ::setenv("CPABE_DEVICE_SECRET", "/secrets/dev.key", 1);
  c.apply_environment();
  ::unsetenv("CPABE_PORT");
  ::unsetenv("CPABE_DEVICE_SECRET");
  EXPECT_EQ(c.port, 7000);
  EXPECT_EQ(c.device_secret(), fs::path("/secrets/dev.key"));
}

}  // namespace
}  // namespace cpabe::service
