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
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpabe/attestation/transport.hpp"
#include "cpabe/common/bytes.hpp"
#include "cpabe/enclave/client.hpp"
#include "cpabe/service/config.hpp"

namespace cpabe::service {

/// Failure with the HTTP status it maps to.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, const std::string& what) : std::runtime_error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

struct StoredFile {
  std::string file_id;  // 32 hex chars
  std::string filename;
  std::uint64_t size = 0;
  std::chrono::system_clock::time_point created;
  std::uint64_t sequence = 0;  // orders files created in the same instant
};

struct Download {
  std::string filename;
  Bytes content;
};

/// Where to attest and whose signature a provisioned policy must carry.
struct VerifierLink {
  std::shared_ptr<attestation::VerifierTransport> transport;
  attestation::PublicKey public_key{};
};

/// The service model behind the HTTP routes. Thread-safe; every enclave
/// interaction goes through the enclave's serial ECALL entry point.
///
/// Storage layout under config.storage_dir:
///   containers/{id}.cpsx, containers/{id}.json   ciphertext and metadata
///   sealed/{pub,master,policy}.seal              sealed enclave state
///   staging/{token}                              decrypted bytes awaiting download
///   platform/                                    simulated hardware secrets
///   audit.log                                    one JSON object per line
class FileService {
 public:
  /// Without a link, one is derived from the config: a remote verifier when
  /// verifier_url is set, an in-process one when policy is set.
  explicit FileService(ServiceConfig config, std::optional<VerifierLink> link = std::nullopt);
  ~FileService();

  /// Restores sealed keys (or runs Setup) and attests if no policy is sealed.
  void start();
  bool ready() const;
  /// Attempts attestation and provisioning. Returns ready().
  bool provision();

  StoredFile encrypt(std::string filename, Bytes content);
  /// Returns a download token. 404 unknown file, 400 bad attributes,
  /// 403 access denied, 500 corrupt container.
  std::string decrypt(std::string_view file_id, const std::vector<std::string>& attributes);
  /// 404 unknown token, 410 used or expired.
  Download download(std::string_view token);

  /// Newest first.
  std::vector<StoredFile> files() const;
  /// Sorted, deduplicated leaf attributes of the provisioned policy.
  std::vector<std::string> attributes() const;
  std::string policy_text() const;
  const ServiceConfig& config() const { return config_; }

  /// Measurement of this service's enclave.
  attestation::Measurement measurement() const { return enclave_->measurement(); }
  attestation::PublicKey quoting_public_key() const;

 private:
  struct Token {
    std::string file_id;
    std::string filename;
    std::chrono::steady_clock::time_point expires;
    bool used = false;
  };

  void load_index();
  void sweep_tokens();
  void audit(std::string_view event, std::string_view file_id, std::string_view detail);
  void install_policy(std::string text);

  ServiceConfig config_;
  std::shared_ptr<enclave::Platform> platform_;
  std::optional<VerifierLink> link_;
  std::shared_ptr<enclave::MemoryOcallHandler> ocall_;
  std::unique_ptr<enclave::Enclave> enclave_;
  std::unique_ptr<enclave::EnclaveClient> client_;

  mutable std::mutex mu_;
  std::string policy_text_;
  std::vector<std::string> vocabulary_;
  std::map<std::string, StoredFile> files_;
  std::map<std::string, Token> tokens_;
  std::uint64_t next_sequence_ = 0;
  std::chrono::steady_clock::time_point last_attempt_{};
  std::mutex provision_mu_;
  std::mutex audit_mu_;
};

}  // namespace cpabe::service
