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

#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "cpabe/attestation/provisioning.hpp"
#include "cpabe/attestation/quote.hpp"

namespace cpabe::attestation {

enum class Verdict {
  kAccepted,
  kBadSignature,
  kWrongMeasurement,
  kStaleNonce,
  kReplayedNonce,
  kNonceMismatch,
};

std::string_view verdict_name(Verdict v);

struct VerifierConfig {
  Measurement expected_measurement{};
  PublicKey quoting_public_key{};
  std::chrono::seconds nonce_ttl{60};
  /// Upper bound on remembered nonces; the oldest entry goes first.
  std::size_t max_tracked_nonces = 65536;
  std::function<std::chrono::system_clock::time_point()> clock = [] {
    return std::chrono::system_clock::now();
  };
};

/// Remote party that issues challenges, checks quotes and releases the policy
/// to attested enclaves. Safe for concurrent use.
class Verifier {
 public:
  Verifier(VerifierConfig config, crypto::Ed25519KeyPair signing_key);

  AttestationChallenge issue_challenge();

  /// Checks, in order: signature, measurement, that the quote carries this
  /// challenge's nonce, that the nonce was issued here and is unused, and
  /// that it has not expired. An accepted quote consumes the nonce and opens
  /// a provisioning session for exactly that quote.
  Verdict verify_quote(const Quote& quote, const AttestationChallenge& challenge);

  /// Requires an open session for `quote`; throws Error(kNotAttested)
  /// otherwise. Consumes the session.
  ProvisioningResponse provision_policy(const Quote& quote, std::string_view policy_text);

  PublicKey public_key() const { return signing_key_.public_key(); }
  const Measurement& expected_measurement() const { return config_.expected_measurement; }

 private:
  enum class NonceState { kOutstanding, kConsumed };
  struct NonceEntry {
    std::chrono::system_clock::time_point issued_at;
    NonceState state;
  };

  void evict_expired(std::chrono::system_clock::time_point now);

  VerifierConfig config_;
  crypto::Ed25519KeyPair signing_key_;
  std::mutex mu_;
  std::map<Nonce, NonceEntry> nonces_;
  std::map<crypto::Digest, std::chrono::system_clock::time_point> sessions_;
};

}  // namespace cpabe::attestation
