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
#include <vector>

#include "cpabe/attestation/verifier.hpp"
#include "cpabe/common/crypto.hpp"
#include "cpabe/enclave/client.hpp"
#include "cpabe/enclave/enclave.hpp"

namespace cpabe::test_support {

// Every byte string that crossed the enclave boundary, in order.
struct Transcript {
  std::vector<Bytes> frames;
  std::mutex mu;

  void add(ByteView b) {
    std::lock_guard lock(mu);
    frames.emplace_back(b.begin(), b.end());
  }
  bool contains(ByteView needle) const {
    for (const auto& f : frames) {
      if (cpabe::contains(f, needle)) return true;
    }
    return false;
  }

  // Number of `window`-byte slices of `secret` found anywhere in the frames.
  std::size_t leaked_windows(ByteView secret, std::size_t window = 16) const {
    std::size_t hits = 0;
    for (std::size_t i = 0; i + window <= secret.size(); ++i) {
      hits += contains(secret.subspan(i, window));
    }
    return hits;
  }
};

class RecordingOcall : public enclave::MemoryOcallHandler {
 public:
  explicit RecordingOcall(Transcript& transcript) : transcript_(transcript) {}

  Bytes read_input(std::string_view id) override {
    if (fail_reads) throw std::runtime_error("injected read failure");
    auto b = MemoryOcallHandler::read_input(id);
    transcript_.add(b);
    return b;
  }
  void write_output(std::string_view id, ByteView data) override {
    ++writes;
    transcript_.add(data);
    MemoryOcallHandler::write_output(id, data);
  }

  bool fail_reads = false;
  int writes = 0;

 private:
  Transcript& transcript_;
};

inline std::shared_ptr<enclave::Platform> make_platform() {
  return std::make_shared<enclave::Platform>(
      enclave::Platform{enclave::generate_device_secret(), attestation::QuotingKey::generate()});
}

// One enclave wired to a recording OCALL handler and a recording client.
struct EnclaveRig {
  EnclaveRig(std::shared_ptr<const enclave::Platform> platform,
             const attestation::PublicKey& verifier_public, std::uint32_t version = 1)
      : ocall(std::make_shared<RecordingOcall>(transcript)),
        enclave(std::make_unique<enclave::Enclave>(
            enclave::EnclaveConfig{"cpabe-enclave", version, verifier_public}, platform, ocall)),
        client(*enclave, [this](ByteView req, ByteView resp) {
          transcript.add(req);
          transcript.add(resp);
        }) {}

  Transcript transcript;
  std::shared_ptr<RecordingOcall> ocall;
  std::unique_ptr<enclave::Enclave> enclave;
  enclave::EnclaveClient client;
};

// Verifier that trusts `platform` and expects version-1 enclaves.
struct VerifierRig {
  explicit VerifierRig(const enclave::Platform& platform,
                       attestation::VerifierConfig config = {})
      : key(crypto::Ed25519KeyPair::generate()) {
    config.expected_measurement = enclave::measure("cpabe-enclave", 1);
    config.quoting_public_key = platform.quoting_key.public_key();
    verifier = std::make_unique<attestation::Verifier>(std::move(config), key);
  }

  crypto::Ed25519KeyPair key;
  std::unique_ptr<attestation::Verifier> verifier;
};

inline enclave::ProvisionResult attest_and_provision(EnclaveRig& rig,
                                                     attestation::Verifier& verifier,
                                                     const std::string& policy_text) {
  auto challenge = verifier.issue_challenge();
  auto quote = rig.client.get_quote(challenge);
  if (verifier.verify_quote(quote, challenge) != attestation::Verdict::kAccepted) {
    throw std::runtime_error("quote rejected");
  }
  return rig.client.provision_policy(verifier.provision_policy(quote, policy_text));
}

}  // namespace cpabe::test_support
