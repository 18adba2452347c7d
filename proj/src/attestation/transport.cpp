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

#include "cpabe/attestation/transport.hpp"

namespace cpabe::attestation {

ProvisioningResponse PolicyAuthority::attest(const AttestationChallenge& challenge,
                                             const Quote& quote) {
  auto verdict = verifier_->verify_quote(quote, challenge);
  if (verdict != Verdict::kAccepted) fail(Errc::kNotAttested, std::string(verdict_name(verdict)));
  return verifier_->provision_policy(quote, policy_text_);
}

Bytes encode_quote_submission(const AttestationChallenge& challenge, const Quote& quote) {
  ByteWriter w;
  w.field(challenge.encode());
  w.field(quote.encode());
  return w.take();
}

}  // namespace cpabe::attestation
