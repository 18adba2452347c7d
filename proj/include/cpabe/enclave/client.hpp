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

#include <functional>
#include <string>

#include "cpabe/abe/abe.hpp"
#include "cpabe/attestation/provisioning.hpp"
#include "cpabe/enclave/enclave.hpp"
#include "cpabe/enclave/frame.hpp"

namespace cpabe::enclave {

/// Sealed state held by the untrusted host. Empty members mean "not present".
struct SealedKeys {
  Bytes public_params;
  Bytes master_key;
  Bytes policy;
};

struct SetupResult {
  Bytes sealed_public;
  Bytes sealed_master;
  abe::PublicParams public_params;
};

struct LoadResult {
  abe::PublicParams public_params;
  std::string policy_text;  // empty when no sealed policy was supplied
};

struct ProvisionResult {
  Bytes sealed_policy;
  std::string policy_text;
};

struct EncryptResult {
  std::string output_id;
  crypto::Digest container_digest{};
};

/// Host-side wrapper that builds request frames and turns error statuses into
/// exceptions carrying the matching Errc.
class EnclaveClient {
 public:
  /// Sees every request and response frame crossing the boundary.
  using Observer = std::function<void(ByteView request, ByteView response)>;

  explicit EnclaveClient(Enclave& enclave, Observer observer = {})
      : enclave_(enclave), observer_(std::move(observer)) {}

  EcallResponse call(const EcallRequest& request);

  SetupResult setup();
  LoadResult load_keys(const SealedKeys& keys);
  attestation::Quote get_quote(const attestation::AttestationChallenge& challenge);
  ProvisionResult provision_policy(const attestation::ProvisioningResponse& response);

  /// Empty members of `sealed` fall back to the enclave's loaded state.
  EncryptResult encrypt(std::string_view input_id, std::string_view output_id,
                        const SealedKeys& sealed = {});
  void decrypt(const policy::AttributeSet& attributes, std::string_view input_id,
               std::string_view output_id, const SealedKeys& sealed = {});
  abe::UserKey keygen(const policy::AttributeSet& attributes, const SealedKeys& sealed = {});

 private:
  std::vector<Bytes> checked(Opcode op, std::vector<Bytes> fields, std::size_t expected);

  Enclave& enclave_;
  Observer observer_;
};

std::string join_attributes(const policy::AttributeSet& attributes);

}  // namespace cpabe::enclave
