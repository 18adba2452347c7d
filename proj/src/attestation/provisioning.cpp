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

#include "cpabe/attestation/provisioning.hpp"

#include <algorithm>

namespace cpabe::attestation {
namespace {

constexpr std::string_view kChannelInfo = "cpabe-enclave/policy-channel/v1";
constexpr std::string_view kResponseLabel = "cpabe-enclave/provisioning/v1";

Bytes channel_key(ByteView shared, const crypto::Digest& quote_digest,
                  const PublicKey& enclave_public, const PublicKey& verifier_public) {
  ByteWriter info;
  info.raw(as_bytes(kChannelInfo));
  info.raw(enclave_public);
  info.raw(verifier_public);
  return crypto::hkdf_sha256(shared, quote_digest, info.view(), crypto::kAeadKeySize);
}

}  // namespace

Bytes ProvisioningResponse::signed_payload(const crypto::Digest& quote_digest) const {
  ByteWriter w;
  w.reserve(kResponseLabel.size() + 32 + 32 + 12 + 4 + ciphertext.size());
  w.raw(as_bytes(kResponseLabel));
  w.raw(quote_digest);
  w.raw(verifier_ephemeral);
  w.raw(nonce);
  w.field(ciphertext);
  return w.take();
}

Bytes ProvisioningResponse::encode() const {
  ByteWriter w;
  w.raw(verifier_ephemeral);
  w.raw(nonce);
  w.field(ciphertext);
  w.raw(signature);
  return w.take();
}

ProvisioningResponse ProvisioningResponse::decode(ByteView bytes) {
  ByteReader r(bytes, Errc::kProvisioningFailure);
  ProvisioningResponse p;
  auto eph = r.raw(32);
  std::copy(eph.begin(), eph.end(), p.verifier_ephemeral.begin());
  auto nonce = r.raw(12);
  std::copy(nonce.begin(), nonce.end(), p.nonce.begin());
  auto ct = r.field();
  p.ciphertext.assign(ct.begin(), ct.end());
  auto sig = r.raw(64);
  std::copy(sig.begin(), sig.end(), p.signature.begin());
  r.expect_done();
  return p;
}

ProvisioningResponse seal_policy_for_quote(const Quote& quote, std::string_view policy_text,
                                           const crypto::Ed25519KeyPair& verifier_key) {
  auto ephemeral = crypto::X25519KeyPair::generate();
  auto enclave_public = quote.ephemeral_public_key();
  auto shared = ephemeral.agree(enclave_public);
  auto digest = quote.digest();
  auto key = channel_key(shared, digest, enclave_public, ephemeral.public_key());
  crypto::cleanse(shared);

  ProvisioningResponse p;
  p.verifier_ephemeral = ephemeral.public_key();
  crypto::random_fill(p.nonce);
  p.ciphertext = crypto::aead_seal(key, p.nonce, as_bytes(policy_text), digest);
  crypto::cleanse(key);
  p.signature = verifier_key.sign(p.signed_payload(digest));
  return p;
}

std::string open_provisioned_policy(const ProvisioningResponse& response, const Quote& own_quote,
                                    const crypto::X25519KeyPair& ephemeral,
                                    const PublicKey& verifier_public_key) {
  auto digest = own_quote.digest();
  if (!crypto::ed25519_verify(verifier_public_key, response.signed_payload(digest),
                              response.signature)) {
    fail(Errc::kProvisioningFailure, "provisioning response signature invalid");
  }
  try {
    auto shared = ephemeral.agree(response.verifier_ephemeral);
    auto key = channel_key(shared, digest, ephemeral.public_key(), response.verifier_ephemeral);
    crypto::cleanse(shared);
    auto plain = crypto::aead_open(key, response.nonce, response.ciphertext, digest);
    crypto::cleanse(key);
    return to_string(plain);
  } catch (const Error&) {
    fail(Errc::kProvisioningFailure, "provisioned policy does not decrypt");
  }
}

}  // namespace cpabe::attestation
