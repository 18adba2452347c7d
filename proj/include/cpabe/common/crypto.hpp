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
#include <initializer_list>
#include <string_view>

#include "cpabe/common/bytes.hpp"

// Thin wrappers over the OpenSSL primitives the toolkit needs. Everything that
// fails inside OpenSSL throws Error(kCryptoFailure); authentication failures
// throw Error(kAuthenticationFailure).
namespace cpabe::crypto {

inline constexpr std::size_t kAeadKeySize = 32;
inline constexpr std::size_t kAeadNonceSize = 12;
inline constexpr std::size_t kAeadTagSize = 16;

using Digest = std::array<std::uint8_t, 32>;

void random_fill(std::span<std::uint8_t> out);
Bytes random_bytes(std::size_t n);

Digest sha256(ByteView data);
/// Hash of the concatenation of `parts`.
Digest sha256(std::initializer_list<ByteView> parts);

Bytes hkdf_sha256(ByteView ikm, ByteView salt, ByteView info, std::size_t length);

/// AES-256-GCM. Output is ciphertext followed by the 16-byte tag.
Bytes aead_seal(ByteView key, ByteView nonce, ByteView plaintext, ByteView ad);
Bytes aead_open(ByteView key, ByteView nonce, ByteView sealed, ByteView ad);

/// Ephemeral Diffie-Hellman over Curve25519.
class X25519KeyPair {
 public:
  static X25519KeyPair generate();

  const std::array<std::uint8_t, 32>& public_key() const { return public_; }
  /// Shared secret with `peer_public`. Throws on a low-order peer point.
  std::array<std::uint8_t, 32> agree(ByteView peer_public) const;

  X25519KeyPair(const X25519KeyPair&) = delete;
  X25519KeyPair& operator=(const X25519KeyPair&) = delete;
  X25519KeyPair(X25519KeyPair&&) noexcept = default;
  X25519KeyPair& operator=(X25519KeyPair&&) noexcept = default;
  ~X25519KeyPair();

 private:
  X25519KeyPair() = default;
  std::array<std::uint8_t, 32> private_{};
  std::array<std::uint8_t, 32> public_{};
};

/// Ed25519 signing key held as its 32-byte seed.
class Ed25519KeyPair {
 public:
  static Ed25519KeyPair generate();
  static Ed25519KeyPair from_seed(ByteView seed);

  const std::array<std::uint8_t, 32>& public_key() const { return public_; }
  const std::array<std::uint8_t, 32>& seed() const { return seed_; }
  std::array<std::uint8_t, 64> sign(ByteView message) const;

  Ed25519KeyPair(const Ed25519KeyPair&) = default;
  Ed25519KeyPair& operator=(const Ed25519KeyPair&) = default;
  ~Ed25519KeyPair();

 private:
  Ed25519KeyPair() = default;
  std::array<std::uint8_t, 32> seed_{};
  std::array<std::uint8_t, 32> public_{};
};

bool ed25519_verify(ByteView public_key, ByteView message, ByteView signature);

/// Overwrites `buf` with zeros in a way the optimizer may not elide.
void cleanse(std::span<std::uint8_t> buf);

}  // namespace cpabe::crypto
