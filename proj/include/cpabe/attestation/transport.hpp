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

#include <memory>
#include <string>

#include "cpabe/attestation/provisioning.hpp"
#include "cpabe/attestation/verifier.hpp"

namespace cpabe::attestation {

/// How an enclave host reaches the verifier.
class VerifierTransport {
 public:
  virtual ~VerifierTransport() = default;
  virtual AttestationChallenge request_challenge() = 0;
  /// Returns the provisioned policy for an accepted quote. Throws
  /// Error(kNotAttested) with the verdict name on rejection and
  /// Error(kIoError) when the verifier cannot be reached.
  virtual ProvisioningResponse submit_quote(const AttestationChallenge& challenge,
                                            const Quote& quote) = 0;
};

/// Verifier plus the policy it hands out.
class PolicyAuthority {
 public:
  PolicyAuthority(std::shared_ptr<Verifier> verifier, std::string policy_text)
      : verifier_(std::move(verifier)), policy_text_(std::move(policy_text)) {}

  AttestationChallenge challenge() { return verifier_->issue_challenge(); }
  ProvisioningResponse attest(const AttestationChallenge& challenge, const Quote& quote);

  Verifier& verifier() { return *verifier_; }

 private:
  std::shared_ptr<Verifier> verifier_;
  std::string policy_text_;
};

/// In-process transport.
class LocalVerifierTransport : public VerifierTransport {
 public:
  explicit LocalVerifierTransport(std::shared_ptr<PolicyAuthority> authority)
      : authority_(std::move(authority)) {}

  AttestationChallenge request_challenge() override { return authority_->challenge(); }
  ProvisioningResponse submit_quote(const AttestationChallenge& challenge,
                                    const Quote& quote) override {
    return authority_->attest(challenge, quote);
  }

 private:
  std::shared_ptr<PolicyAuthority> authority_;
};

/// Wire messages for the HTTP binding. Every body is a sequence of 4-byte
/// big-endian length-prefixed fields.
///   POST /attest/challenge  ()                 -> (challenge)
///   POST /attest/quote      (challenge, quote) -> (provisioning response)
/// Rejections answer 403 with the verdict name as a plain-text body.
Bytes encode_quote_submission(const AttestationChallenge& challenge, const Quote& quote);

}  // namespace cpabe::attestation
