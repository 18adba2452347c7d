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

#include "cpabe/service/config.hpp"

#include <cstdlib>
#include <fstream>

#include <nlohmann/json.hpp>

#include "cpabe/common/error.hpp"

namespace cpabe::service {
namespace {

const char* env(const char* name) {
  const char* v = std::getenv(name);
  return v && *v ? v : nullptr;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(Errc::kInvalidArgument, std::string("not a number for ") + what + ": " + s);
  }
}

}  // namespace

std::filesystem::path ServiceConfig::device_secret() const {
  return device_secret_path.empty() ? platform_dir() / "device.key" : device_secret_path;
}

ServiceConfig ServiceConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::kIoError, "cannot open config " + path.string());
  ServiceConfig c;
  try {
    auto j = nlohmann::json::parse(in);
    c.host = j.value("host", c.host);
    c.port = j.value("port", c.port);
    c.storage_dir = j.value("storage_dir", c.storage_dir.string());
    c.device_secret_path = j.value("device_secret_path", std::string());
    c.verifier_url = j.value("verifier_url", c.verifier_url);
    c.verifier_public_key = j.value("verifier_public_key", c.verifier_public_key);
    c.policy = j.value("policy", c.policy);
    c.max_upload_bytes = j.value("max_upload_bytes", c.max_upload_bytes);
    c.token_ttl = std::chrono::seconds(j.value("token_ttl_seconds", c.token_ttl.count()));
    c.web_root = j.value("web_root", std::string());
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::kInvalidArgument, std::string("bad config: ") + e.what());
  }
  return c;
}

void ServiceConfig::apply_environment() {
  if (auto v = env("CPABE_HOST")) host = v;
  if (auto v = env("CPABE_PORT")) port = static_cast<int>(parse_u64(v, "CPABE_PORT"));
  if (auto v = env("CPABE_STORAGE_DIR")) storage_dir = v;
  if (auto v = env("CPABE_DEVICE_SECRET")) device_secret_path = v;
  if (auto v = env("CPABE_VERIFIER_URL")) verifier_url = v;
  if (auto v = env("CPABE_VERIFIER_PUBLIC_KEY")) verifier_public_key = v;
  if (auto v = env("CPABE_POLICY")) policy = v;
  if (auto v = env("CPABE_MAX_UPLOAD_BYTES")) {
    max_upload_bytes = parse_u64(v, "CPABE_MAX_UPLOAD_BYTES");
  }
  if (auto v = env("CPABE_WEB_ROOT")) web_root = v;
}

}  // namespace cpabe::service
