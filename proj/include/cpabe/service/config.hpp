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

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>

namespace cpabe::service {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path storage_dir = "data";
  /// Defaults to <storage_dir>/platform/device.key.
  std::filesystem::path device_secret_path;
  /// Remote verifier base URL. Empty runs a verifier in-process.
  std::string verifier_url;
  /// Hex Ed25519 key the remote verifier signs provisioning responses with.
  std::string verifier_public_key;
  /// Policy handed out by the in-process verifier.
  std::string policy;
  std::uint64_t max_upload_bytes = 100ull << 20;
  std::chrono::seconds token_ttl{600};
  /// Optional directory served at "/".
  std::filesystem::path web_root;

  std::filesystem::path device_secret() const;
  std::filesystem::path platform_dir() const { return storage_dir / "platform"; }
  std::filesystem::path containers_dir() const { return storage_dir / "containers"; }
  std::filesystem::path sealed_dir() const { return storage_dir / "sealed"; }
  std::filesystem::path staging_dir() const { return storage_dir / "staging"; }

  /// JSON object with the member names above as keys; absent keys keep
  /// their defaults. Throws Error(kInvalidArgument) or Error(kIoError).
  static ServiceConfig from_file(const std::filesystem::path& path);
  /// Applies CPABE_HOST, CPABE_PORT, CPABE_STORAGE_DIR, CPABE_DEVICE_SECRET,
  /// CPABE_VERIFIER_URL, CPABE_VERIFIER_PUBLIC_KEY, CPABE_POLICY,
  /// CPABE_MAX_UPLOAD_BYTES and CPABE_WEB_ROOT when set.
  void apply_environment();
};

}  // namespace cpabe::service
