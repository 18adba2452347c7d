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

#include <memory>
#include <mutex>
#include <string>

#include "cpabe/attestation/quote.hpp"
#include "cpabe/enclave/measurement.hpp"
#include "cpabe/enclave/ocall.hpp"
#include "cpabe/enclave/sealing.hpp"

namespace cpabe::enclave {

/// Per-machine secrets the simulated hardware provides to every enclave.
struct Platform {
  DeviceSecret device_secret{};
  attestation::QuotingKey quoting_key;
};

/// Reads both platform secrets, creating whichever file is missing.
std::shared_ptr<Platform> load_or_create_platform(const std::filesystem::path& device_secret,
                                                  const std::filesystem::path& quoting_key);

struct EnclaveConfig {
  std::string code_identity = "cpabe-enclave";
  std::uint32_t config_version = 1;
  /// Key whose signature a provisioned policy must carry.
  attestation::PublicKey verifier_public_key{};
};

enum class EnclaveStage { kEmpty, kKeyed, kReady };

/// Simulated enclave. The only way in is ecall(); the only way out is the
/// response frame and the OCALL handler. Calls from several threads are
/// executed one at a time.
class Enclave {
 public:
  Enclave(EnclaveConfig config, std::shared_ptr<const Platform> platform,
          std::shared_ptr<OcallHandler> ocall);
  ~Enclave();
  Enclave(const Enclave&) = delete;
  Enclave& operator=(const Enclave&) = delete;

  /// Decodes a request frame, runs it, and returns an encoded response.
  /// Never throws: every failure becomes a status code.
  Bytes ecall(ByteView request_frame);

  const Measurement& measurement() const { return measurement_; }
  EnclaveStage stage() const;

 private:
  struct State;

  Measurement measurement_;
  mutable std::mutex mu_;
  std::unique_ptr<State> state_;
};

}  // namespace cpabe::enclave
