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
#include <cstdint>

#include "cpabe/common/bytes.hpp"

namespace cpabe::abe {

inline constexpr std::size_t kDemNonceSize = 12;
using DemNonce = std::array<std::uint8_t, kDemNonceSize>;

struct DemCiphertext {
  DemNonce nonce;
  Bytes body;  // ciphertext followed by the 16-byte tag
};

/// AES-256-GCM under a fresh random 96-bit nonce.
DemCiphertext dem_encrypt(ByteView key, ByteView plaintext, ByteView associated_data);

/// Encryption under a caller-chosen nonce, for formats whose associated data
/// covers the nonce itself. The nonce must never repeat under one key.
Bytes dem_seal(ByteView key, const DemNonce& nonce, ByteView plaintext,
               ByteView associated_data);

DemNonce fresh_dem_nonce();

/// Throws Error(kAuthenticationFailure) on any modification of nonce, body
/// or associated data.
Bytes dem_decrypt(ByteView key, ByteView nonce, ByteView body, ByteView associated_data);

}  // namespace cpabe::abe
