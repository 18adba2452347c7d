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

#include <array>
#include <string>
#include <string_view>

#include "cpabe/attestation/quote.hpp"
#include "cpabe/common/crypto.hpp"

namespace cpabe::attestation {

/// Policy delivered by the verifier, readable only by the enclave that holds
/// the ephemeral secret matching the quote's report data.
///
/// Wire form: verifier ephemeral key (32) | nonce (12) | u32 len | ciphertext
///            | signature (64)
///
/// The AEAD key is HKDF-SHA256 over the X25519 shared secret, bound to the
/// quote digest and both ephemeral keys; the AEAD associated data is the quote
/// digest. The verifier signs everything before the signature together with
/// the quote digest.
struct ProvisioningResponse {
  PublicKey verifier_ephemeral{};
  std::array<std::uint8_t, 12> nonce{};
  Bytes ciphertext;
  Signature signature{};

  Bytes signed_payload(const crypto::Digest& quote_digest) const;
  Bytes encode() const;
  /// Throws Error(kProvisioningFailure).
  static ProvisioningResponse decode(ByteView bytes);
};

/// Verifier side: encrypts `policy_text` to the quote's ephemeral key.
ProvisioningResponse seal_policy_for_quote(const Quote& quote, std::string_view policy_text,
                                           const crypto::Ed25519KeyPair& verifier_key);

/// Enclave side. Throws Error(kProvisioningFailure) when the signature does not
/// verify under `verifier_public_key` or the ciphertext does not open under
/// `ephemeral`.
std::string open_provisioned_policy(const ProvisioningResponse& response, const Quote& own_quote,
                                    const crypto::X25519KeyPair& ephemeral,
                                    const PublicKey& verifier_public_key);

}  // namespace cpabe::attestation
