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

#include "cpabe/enclave/client.hpp"

#include <algorithm>

namespace cpabe::enclave {

std::string join_attributes(const policy::AttributeSet& attributes) {
  std::string out;
  for (const auto& a : attributes) {
    if (!out.empty()) out += ',';
    out += a.str();
  }
  return out;
}

EcallResponse EnclaveClient::call(const EcallRequest& request) {
  auto frame = request.encode();
  auto response = enclave_.ecall(frame);
  if (observer_) observer_(frame, response);
  return EcallResponse::decode(response);
}

std::vector<Bytes> EnclaveClient::checked(Opcode op, std::vector<Bytes> fields,
                                          std::size_t expected) {
  auto resp = call({op, std::move(fields)});
  if (!resp.ok()) {
    std::string msg = resp.fields.empty() ? std::string(status_name(resp.status))
                                          : to_string(resp.fields.front());
    auto code = errc_from_status(resp.status);
    // The enclave reports Error::what(), which already carries the code name.
    auto prefix = std::string(errc_name(code)) + ": ";
    if (msg.starts_with(prefix)) msg.erase(0, prefix.size());
    fail(code, msg);
  }
  if (resp.fields.size() != expected) {
    fail(Errc::kMalformedFrame, "unexpected response field count");
  }
  return std::move(resp.fields);
}

SetupResult EnclaveClient::setup() {
  auto f = checked(Opcode::kSetup, {}, 3);
  return {std::move(f[0]), std::move(f[1]), abe::PublicParams::decode(f[2])};
}

LoadResult EnclaveClient::load_keys(const SealedKeys& keys) {
  auto f = checked(Opcode::kLoadKeys, {keys.public_params, keys.master_key, keys.policy}, 2);
  return {abe::PublicParams::decode(f[0]), to_string(f[1])};
}

attestation::Quote EnclaveClient::get_quote(const attestation::AttestationChallenge& challenge) {
  auto f = checked(Opcode::kGetQuote, {Bytes(challenge.nonce.begin(), challenge.nonce.end())}, 1);
  return attestation::Quote::decode(f[0]);
}

ProvisionResult EnclaveClient::provision_policy(
    const attestation::ProvisioningResponse& response) {
  auto f = checked(Opcode::kProvisionPolicy, {response.encode()}, 2);
  return {std::move(f[0]), to_string(f[1])};
}

EncryptResult EnclaveClient::encrypt(std::string_view input_id, std::string_view output_id,
                                     const SealedKeys& sealed) {
  auto f = checked(Opcode::kEncrypt,
                   {to_bytes(input_id), to_bytes(output_id), sealed.public_params, sealed.policy},
                   2);
  EncryptResult r{to_string(f[0]), {}};
  if (f[1].size() != r.container_digest.size()) fail(Errc::kMalformedFrame, "bad digest");
  std::copy(f[1].begin(), f[1].end(), r.container_digest.begin());
  return r;
}

void EnclaveClient::decrypt(const policy::AttributeSet& attributes, std::string_view input_id,
                            std::string_view output_id, const SealedKeys& sealed) {
  checked(Opcode::kDecrypt,
          {to_bytes(join_attributes(attributes)), to_bytes(input_id), to_bytes(output_id),
           sealed.public_params, sealed.master_key},
          1);
}

abe::UserKey EnclaveClient::keygen(const policy::AttributeSet& attributes,
                                   const SealedKeys& sealed) {
  auto f = checked(Opcode::kKeygen,
                   {to_bytes(join_attributes(attributes)), sealed.public_params, sealed.master_key},
                   1);
  return abe::UserKey::decode(f[0]);
}

}  // namespace cpabe::enclave
