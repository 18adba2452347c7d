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
#include <chrono>
#include <cstdint>
#include <filesystem>

#include "cpabe/common/bytes.hpp"
#include "cpabe/common/crypto.hpp"

namespace cpabe::attestation {

/// 32-byte digest identifying enclave code and configuration.
using Measurement = std::array<std::uint8_t, 32>;
using Nonce = std::array<std::uint8_t, 16>;
using ReportData = std::array<std::uint8_t, 64>;
using PublicKey = std::array<std::uint8_t, 32>;
using Signature = std::array<std::uint8_t, 64>;

/// Verifier-issued freshness challenge. Wire form: nonce | u64 issued_at
/// (milliseconds since the Unix epoch, big-endian).
struct AttestationChallenge {
  Nonce nonce{};
  std::chrono::system_clock::time_point issued_at;

  Bytes encode() const;
  static AttestationChallenge decode(ByteView bytes);
};

/// report_data = enclave ephemeral X25519 public key (32) | nonce (16) | zeros (16)
ReportData make_report_data(const PublicKey& ephemeral_public, const Nonce& nonce);

/// Attestation evidence. Wire form: measurement (32) | report_data (64) |
/// signature (64), where the signature is Ed25519 by the platform quoting key
/// over a domain label, the measurement and the report data.
struct Quote {
  static constexpr std::size_t kSize = 32 + 64 + 64;

  Measurement measurement{};
  ReportData report_data{};
  Signature signature{};

  PublicKey ephemeral_public_key() const;
  Nonce nonce() const;
  /// Bytes covered by the signature.
  Bytes signed_payload() const;
  crypto::Digest digest() const;

  Bytes encode() const;
  /// Throws Error(kMalformedQuote).
  static Quote decode(ByteView bytes);
};

/// Per-platform signing key standing in for the hardware quoting
/// infrastructure. The public half is pre-shared with verifiers.
class QuotingKey {
 public:
  static QuotingKey generate();
  /// Reads a 32-byte seed; throws Error(kIoError) or Error(kInvalidArgument).
  static QuotingKey load(const std::filesystem::path& path);
  /// Loads `path` if it exists, otherwise generates and writes it.
  static QuotingKey load_or_create(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  PublicKey public_key() const { return key_.public_key(); }
  Quote sign(const Measurement& measurement, const ReportData& report_data) const;

 private:
  explicit QuotingKey(crypto::Ed25519KeyPair key) : key_(std::move(key)) {}
  crypto::Ed25519KeyPair key_;
};

bool verify_quote_signature(const Quote& quote, const PublicKey& quoting_public_key);

}  // namespace cpabe::attestation
