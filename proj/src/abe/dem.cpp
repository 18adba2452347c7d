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

#include "cpabe/abe/dem.hpp"

#include "cpabe/common/crypto.hpp"
#include "cpabe/common/error.hpp"

namespace cpabe::abe {

DemNonce fresh_dem_nonce() {
  DemNonce n{};
  crypto::random_fill(n);
  return n;
}

Bytes dem_seal(ByteView key, const DemNonce& nonce, ByteView plaintext,
               ByteView associated_data) {
  return crypto::aead_seal(key, nonce, plaintext, associated_data);
}

DemCiphertext dem_encrypt(ByteView key, ByteView plaintext, ByteView associated_data) {
  DemCiphertext out{fresh_dem_nonce(), {}};
  out.body = dem_seal(key, out.nonce, plaintext, associated_data);
  return out;
}

Bytes dem_decrypt(ByteView key, ByteView nonce, ByteView body, ByteView associated_data) {
  if (nonce.size() != kDemNonceSize) {
    fail(Errc::kAuthenticationFailure, "DEM nonce must be 12 bytes");
  }
  return crypto::aead_open(key, nonce, body, associated_data);
}

}  // namespace cpabe::abe
