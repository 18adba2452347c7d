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

#include "cpabe/attestation/verifier.hpp"

#include <algorithm>

namespace cpabe::attestation {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kAccepted: return "Accepted";
    case Verdict::kBadSignature: return "BadSignature";
    case Verdict::kWrongMeasurement: return "WrongMeasurement";
    case Verdict::kStaleNonce: return "StaleNonce";
    case Verdict::kReplayedNonce: return "ReplayedNonce";
    case Verdict::kNonceMismatch: return "NonceMismatch";
  }
  return "Unknown";
}

Verifier::Verifier(VerifierConfig config, crypto::Ed25519KeyPair signing_key)
    : config_(std::move(config)), signing_key_(std::move(signing_key)) {}

void Verifier::evict_expired(std::chrono::system_clock::time_point now) {
  std::erase_if(nonces_, [&](const auto& kv) { return now - kv.second.issued_at > config_.nonce_ttl; });
  std::erase_if(sessions_, [&](const auto& kv) { return now - kv.second > config_.nonce_ttl; });
  while (nonces_.size() >= config_.max_tracked_nonces) {
    auto oldest = std::min_element(nonces_.begin(), nonces_.end(), [](const auto& a, const auto& b) {
      return a.second.issued_at < b.second.issued_at;
    });
    nonces_.erase(oldest);
  }
}

AttestationChallenge Verifier::issue_challenge() {
  std::lock_guard lock(mu_);
  auto now = config_.clock();
  evict_expired(now);
  AttestationChallenge c;
  do {
    crypto::random_fill(c.nonce);
  } while (nonces_.contains(c.nonce));
  c.issued_at = now;
  nonces_.emplace(c.nonce, NonceEntry{now, NonceState::kOutstanding});
  return c;
}

Verdict Verifier::verify_quote(const Quote& quote, const AttestationChallenge& challenge) {
  if (!verify_quote_signature(quote, config_.quoting_public_key)) return Verdict::kBadSignature;
  if (quote.measurement != config_.expected_measurement) return Verdict::kWrongMeasurement;

  std::lock_guard lock(mu_);
  auto now = config_.clock();
  auto quoted = quote.nonce();
  if (quoted != challenge.nonce) return Verdict::kNonceMismatch;
  auto it = nonces_.find(quoted);
  // Nonces this verifier never issued, or issued and already evicted, are
  // indistinguishable from expired ones.
  if (it == nonces_.end()) return Verdict::kStaleNonce;
  if (it->second.state == NonceState::kConsumed) return Verdict::kReplayedNonce;
  if (now - it->second.issued_at > config_.nonce_ttl) {
    nonces_.erase(it);
    return Verdict::kStaleNonce;
  }
  it->second.state = NonceState::kConsumed;
  sessions_[quote.digest()] = it->second.issued_at;
  return Verdict::kAccepted;
}

ProvisioningResponse Verifier::provision_policy(const Quote& quote, std::string_view policy_text) {
  {
    std::lock_guard lock(mu_);
    evict_expired(config_.clock());
    if (sessions_.erase(quote.digest()) == 0) {
      fail(Errc::kNotAttested, "no accepted quote for this provisioning request");
    }
  }
  return seal_policy_for_quote(quote, policy_text, signing_key_);
}

}  // namespace cpabe::attestation
