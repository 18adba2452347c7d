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

#include <string>

#include "cpabe/abe/abe.hpp"
#include "cpabe/abe/dem.hpp"

namespace cpabe::abe {

/// On-disk hybrid ciphertext:
///
///   "CPSX" | version (1 byte) | u32 len | policy text | u32 len | KEM body
///          | DEM nonce (12 bytes) | AEAD body (rest of the file)
///
/// Lengths are big-endian. The AEAD associated data is every header byte from
/// the magic through the nonce.
struct CiphertextContainer {
  static constexpr std::string_view kMagic = "CPSX";
  static constexpr std::uint8_t kVersion = 1;

  std::string policy_text;
  Bytes kem_body;
  DemNonce nonce{};
  Bytes body;

  /// Magic through nonce.
  Bytes header() const;
  Bytes encode() const;
  /// Throws Error(kMalformedContainer) on framing errors.
  static CiphertextContainer decode(ByteView bytes);
};

CiphertextContainer encrypt_file(const PublicParams& pp, const PolicyTree& policy,
                                 ByteView plaintext);

/// DEM half of encrypt_file for an encapsulation produced by the caller.
/// Cleanses the shared secret.
CiphertextContainer seal_container(const PolicyTree& policy, KemEncapsulation kem,
                                   ByteView plaintext);

/// Throws Error(kSatisfactionFailure), Error(kAuthenticationFailure) or
/// Error(kMalformedContainer).
Bytes decrypt_file(const PublicParams& pp, const UserKey& uk,
                   const CiphertextContainer& container);

}  // namespace cpabe::abe
