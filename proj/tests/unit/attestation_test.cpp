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

#include <gtest/gtest.h>

#include "cpabe/attestation/provisioning.hpp"
#include "cpabe/attestation/verifier.hpp"
#include "support/enclave_rig.hpp"
#include "support/errors.hpp"

namespace cpabe::attestation {
namespace {

using test_support::EnclaveRig;
using test_support::error_of;
using test_support::VerifierRig;

constexpr const char* kRule = "designation:professor department:cs file-type:pdf 3of3";

class AttestationTest : public ::testing::Test {
 protected:
  AttestationTest()
      : platform_(test_support::make_platform()),
        vr_(*platform_, clock_config()),
        rig_(platform_, vr_.key.public_key()) {
    rig_.client.setup();
  }

  VerifierConfig clock_config() {
    VerifierConfig c;
    c.clock = [this] { return now_; };
    return c;
  }

  std::chrono::system_clock::time_point now_ = std::chrono::system_clock::now();
  std::shared_ptr<enclave::Platform> platform_;
  VerifierRig vr_;
  EnclaveRig rig_;
};

TEST(QuoteFormatTest, ChallengeAndQuoteRoundTrip) {
  AttestationChallenge c;
  crypto::random_fill(c.nonce);
  c.issued_at = std::chrono::system_clock::time_point(std::chrono::milliseconds(1234567));
  auto decoded = AttestationChallenge::decode(c.encode());
  EXPECT_EQ(decoded.nonce, c.nonce);
  EXPECT_EQ(decoded.issued_at, c.issued_at);

  auto key = QuotingKey::generate();
  PublicKey eph{};
  eph.fill(7);
  auto q = key.sign(Measurement{}, make_report_data(eph, c.nonce));
  auto bytes = q.encode();
  ASSERT_EQ(bytes.size(), Quote::kSize);
  auto back = Quote::decode(bytes);
  EXPECT_EQ(back.encode(), bytes);
  EXPECT_EQ(back.nonce(), c.nonce);
  EXPECT_EQ(back.ephemeral_public_key(), eph);
  // Padding after the nonce is zero.
  for (std::size_t i = 48; i < 64; ++i) EXPECT_EQ(back.report_data[i], 0);
  bytes.pop_back();
  EXPECT_EQ(error_of([&] { Quote::decode(bytes); }), Errc::kMalformedQuote);
}

TEST_F(AttestationTest, HappyPathInstallsPolicy) {
  auto result = test_support::attest_and_provision(rig_, *vr_.verifier, kRule);
  EXPECT_EQ(result.policy_text, kRule);
  EXPECT_EQ(rig_.enclave->stage(), enclave::EnclaveStage::kReady);
}

TEST_F(AttestationTest, FlippedSignatureRejected) {
  auto challenge = vr_.verifier->issue_challenge();
  auto quote = rig_.client.get_quote(challenge);
  for (std::size_t i = 0; i < quote.signature.size(); i += 7) {
    auto bad = quote;
    bad.signature[i] ^= 0x01;
    EXPECT_EQ(vr_.verifier->verify_quote(bad, challenge), Verdict::kBadSignature);
  }
  auto forged = quote;
  forged.report_data[0] ^= 0x01;
  EXPECT_EQ(vr_.verifier->verify_quote(forged, challenge), Verdict::kBadSignature);
  // Rejections do not burn the nonce.
  EXPECT_EQ(vr_.verifier->verify_quote(quote, challenge), Verdict::kAccepted);
}

TEST_F(AttestationTest, WrongMeasurementRejected) {
  EnclaveRig bumped(platform_, vr_.key.public_key(), 2);
  auto challenge = vr_.verifier->issue_challenge();
  auto quote = bumped.client.get_quote(challenge);
  EXPECT_EQ(vr_.verifier->verify_quote(quote, challenge), Verdict::kWrongMeasurement);
}

TEST_F(AttestationTest, ForeignPlatformRejected) {
  EnclaveRig foreign(test_support::make_platform(), vr_.key.public_key());
  auto challenge = vr_.verifier->issue_challenge();
  EXPECT_EQ(vr_.verifier->verify_quote(foreign.client.get_quote(challenge), challenge),
            Verdict::kBadSignature);
}

TEST_F(AttestationTest, StaleNonceRejected) {
  auto challenge = vr_.verifier->issue_challenge();
  auto quote = rig_.client.get_quote(challenge);
  now_ += std::chrono::seconds(61);
  EXPECT_EQ(vr_.verifier->verify_quote(quote, challenge), Verdict::kStaleNonce);

  auto fresh = vr_.verifier->issue_challenge();
  now_ += std::chrono::seconds(60);
  EXPECT_EQ(vr_.verifier->verify_quote(rig_.client.get_quote(fresh), fresh), Verdict::kAccepted);
}

TEST_F(AttestationTest, UnissuedNonceIsStale) {
  AttestationChallenge forged;
  crypto::random_fill(forged.nonce);
  forged.issued_at = now_;
  EXPECT_EQ(vr_.verifier->verify_quote(rig_.client.get_quote(forged), forged),
            Verdict::kStaleNonce);
}

TEST_F(AttestationTest, ReplayedQuoteRejected) {
  auto challenge = vr_.verifier->issue_challenge();
  auto quote = rig_.client.get_quote(challenge);
  EXPECT_EQ(vr_.verifier->verify_quote(quote, challenge), Verdict::kAccepted);
  EXPECT_EQ(vr_.verifier->verify_quote(quote, challenge), Verdict::kReplayedNonce);
  auto next = vr_.verifier->issue_challenge();
  EXPECT_EQ(vr_.verifier->verify_quote(quote, next), Verdict::kNonceMismatch);
}

TEST_F(AttestationTest, ProvisioningRequiresAcceptedQuote) {
  auto challenge = vr_.verifier->issue_challenge();
  auto quote = rig_.client.get_quote(challenge);
  EXPECT_EQ(error_of([&] { vr_.verifier->provision_policy(quote, kRule); }),
            Errc::kNotAttested);
  ASSERT_EQ(vr_.verifier->verify_quote(quote, challenge), Verdict::kAccepted);
  auto response = vr_.verifier->provision_policy(quote, kRule);
  // One provisioning per accepted quote.
  EXPECT_EQ(error_of([&] { vr_.verifier->provision_policy(quote, kRule); }),
            Errc::kNotAttested);
  rig_.client.provision_policy(response);
}

TEST_F(AttestationTest, EnclaveRejectsProvisioningWithoutQuote) {
  auto challenge = vr_.verifier->issue_challenge();
  auto quote = rig_.client.get_quote(challenge);
  ASSERT_EQ(vr_.verifier->verify_quote(quote, challenge), Verdict::kAccepted);
  auto response = vr_.verifier->provision_policy(quote, kRule);
  rig_.client.provision_policy(response);
  // The ephemeral key was consumed; the same response cannot be replayed.
  EXPECT_EQ(error_of([&] { rig_.client.provision_policy(response); }), Errc::kNotAttested);
}

TEST_F(AttestationTest, ResponseReplayedToSecondEnclaveFails) {
  EnclaveRig second(platform_, vr_.key.public_key());
  second.client.setup();

  auto challenge = vr_.verifier->issue_challenge();
  auto quote = rig_.client.get_quote(challenge);
  ASSERT_EQ(vr_.verifier->verify_quote(quote, challenge), Verdict::kAccepted);
  auto eavesdropped = vr_.verifier->provision_policy(quote, kRule);

  // The second enclave attests on its own and is sent the first one's response.
  auto c2 = vr_.verifier->issue_challenge();
  auto q2 = second.client.get_quote(c2);
  ASSERT_EQ(vr_.verifier->verify_quote(q2, c2), Verdict::kAccepted);
  EXPECT_EQ(error_of([&] { second.client.provision_policy(eavesdropped); }),
            Errc::kProvisioningFailure);
  EXPECT_EQ(second.enclave->stage(), enclave::EnclaveStage::kKeyed);

  // The legitimate recipient still installs it.
  rig_.client.provision_policy(eavesdropped);
  EXPECT_EQ(rig_.enclave->stage(), enclave::EnclaveStage::kReady);
}

TEST(ProvisioningChannelTest, OnlyMatchingEphemeralDecrypts) {
  auto qk = QuotingKey::generate();
  auto verifier_key = crypto::Ed25519KeyPair::generate();
  auto mine = crypto::X25519KeyPair::generate();
  auto other = crypto::X25519KeyPair::generate();
  Nonce nonce{};
  auto quote = qk.sign(Measurement{}, make_report_data(mine.public_key(), nonce));
  auto response = seal_policy_for_quote(quote, kRule, verifier_key);

  EXPECT_FALSE(contains(response.encode(), as_bytes(kRule)));
  EXPECT_EQ(open_provisioned_policy(response, quote, mine, verifier_key.public_key()), kRule);
  // Signature checks out against the quote, but the key agreement does not.
  EXPECT_EQ(error_of([&] {
              open_provisioned_policy(response, quote, other, verifier_key.public_key());
            }),
            Errc::kProvisioningFailure);
  auto impostor = crypto::Ed25519KeyPair::generate();
  EXPECT_EQ(error_of([&] {
              open_provisioned_policy(response, quote, mine, impostor.public_key());
            }),
            Errc::kProvisioningFailure);
  auto tampered = response;
  tampered.ciphertext[0] ^= 1;
  EXPECT_EQ(error_of([&] {
              open_provisioned_policy(tampered, quote, mine, verifier_key.public_key());
            }),
            Errc::kProvisioningFailure);
  EXPECT_EQ(ProvisioningResponse::decode(response.encode()).encode(), response.encode());
}

TEST_F(AttestationTest, BadPolicyFromVerifier) {
  auto challenge = vr_.verifier->issue_challenge();
  auto quote = rig_.client.get_quote(challenge);
  ASSERT_EQ(vr_.verifier->verify_quote(quote, challenge), Verdict::kAccepted);
  auto response = vr_.verifier->provision_policy(quote, "a b 3of2");
  EXPECT_EQ(error_of([&] { rig_.client.provision_policy(response); }), Errc::kBadPolicy);
  EXPECT_EQ(rig_.enclave->stage(), enclave::EnclaveStage::kKeyed);
}

TEST_F(AttestationTest, ReprovisioningNeedsFreshAttestation) {
  test_support::attest_and_provision(rig_, *vr_.verifier, kRule);
  auto second = test_support::attest_and_provision(rig_, *vr_.verifier, "a b 2of2");
  EXPECT_EQ(second.policy_text, "a b 2of2");
}

TEST_F(AttestationTest, PolicyNeverCrossesHostInClear) {
  rig_.transcript.frames.clear();
  auto challenge = vr_.verifier->issue_challenge();
  auto quote = rig_.client.get_quote(challenge);
  ASSERT_EQ(vr_.verifier->verify_quote(quote, challenge), Verdict::kAccepted);
  auto response = vr_.verifier->provision_policy(quote, kRule);
  test_support::Transcript wire;
  wire.add(challenge.encode());
  wire.add(quote.encode());
  wire.add(response.encode());
  EXPECT_FALSE(wire.contains(as_bytes(kRule)));
  EXPECT_FALSE(wire.contains(as_bytes("designation:professor")));
}

}  // namespace
}  // namespace cpabe::attestation
