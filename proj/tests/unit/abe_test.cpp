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

#include "cpabe/abe/abe.hpp"
#include "cpabe/abe/master_key_access.hpp"
#include "cpabe/policy/satisfaction.hpp"
#include "support/errors.hpp"
#include "support/policy_oracle.hpp"

namespace cpabe::abe {
namespace {

using test_support::error_of;

AttributeSet attrs(std::initializer_list<const char*> names) {
  AttributeSet out;
  for (auto* n : names) out.emplace(n);
  return out;
}

class AbeTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    auto [pp, mk] = setup(128);
    pp_ = new PublicParams(pp);
    mk_ = new MasterKey(mk);
  }
  static void TearDownTestSuite() {
    delete pp_;
    delete mk_;
  }

  // Encrypts under `policy_text` and decrypts with a fresh key for `names`.
  static bool round_trip(const std::string& policy_text, const AttributeSet& names) {
    auto policy = policy::parse_policy(policy_text);
    auto enc = kem_encrypt(*pp_, policy);
    auto uk = keygen(*mk_, *pp_, names);
    try {
      return kem_decrypt(*pp_, uk, enc.ciphertext) == enc.secret;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::kSatisfactionFailure);
      return false;
    }
  }

  static PublicParams* pp_;
  static MasterKey* mk_;
};

PublicParams* AbeTest::pp_ = nullptr;
MasterKey* AbeTest::mk_ = nullptr;

TEST_F(AbeTest, SetupProducesConsistentKeys) {
  EXPECT_EQ(pp_->group_id, "BLS12-381");
  EXPECT_TRUE(verify_key_pair(*pp_, *mk_));
  auto [pp2, mk2] = setup();
  EXPECT_TRUE(verify_key_pair(pp2, mk2));
  EXPECT_FALSE(verify_key_pair(*pp_, mk2));
  EXPECT_NE(MasterKeyAccess::encode(*mk_), MasterKeyAccess::encode(mk2));
  EXPECT_NE(pp_->encode(), pp2.encode());
}

TEST_F(AbeTest, UnsupportedSecurityLevel) {
  EXPECT_EQ(error_of([] { setup(80); }), Errc::kUnsupportedSecurityLevel);
  EXPECT_EQ(error_of([] { setup(256); }), Errc::kUnsupportedSecurityLevel);
}

TEST_F(AbeTest, SingleLeafPolicy) {
  EXPECT_TRUE(round_trip("department:cs 1of1", attrs({"department:cs"})));
  EXPECT_TRUE(round_trip("a", attrs({"a"})));
  EXPECT_TRUE(round_trip("a 1of1", attrs({"a", "b"})));
}

TEST_F(AbeTest, EmptyAttributeSetRejected) {
  EXPECT_EQ(error_of([&] { keygen(*mk_, *pp_, {}); }), Errc::kEmptyAttributeSet);
}

TEST_F(AbeTest, KeysAreRandomizedButInterchangeable) {
  auto set = attrs({"a", "b"});
  auto k1 = keygen(*mk_, *pp_, set);
  auto k2 = keygen(*mk_, *pp_, set);
  EXPECT_NE(k1.encode(), k2.encode());
  EXPECT_NE(k1.fingerprint(), k2.fingerprint());
  EXPECT_TRUE(verify_user_key(*pp_, k1));
  EXPECT_TRUE(verify_user_key(*pp_, k2));
  auto enc = kem_encrypt(*pp_, policy::parse_policy("a b 2of2"));
  EXPECT_EQ(kem_decrypt(*pp_, k1, enc.ciphertext), enc.secret);
  EXPECT_EQ(kem_decrypt(*pp_, k2, enc.ciphertext), enc.secret);
}

TEST_F(AbeTest, MixedComponentsFailSelfCheck) {
  auto k1 = keygen(*mk_, *pp_, attrs({"a", "b"}));
  auto k2 = keygen(*mk_, *pp_, attrs({"a", "b"}));
  auto comps = k1.components();
  comps.at(Attribute("b")) = k2.components().at(Attribute("b"));
  EXPECT_FALSE(verify_user_key(*pp_, UserKey(k1.d(), comps)));
}

TEST_F(AbeTest, ThresholdUnmet) {
  auto enc = kem_encrypt(*pp_, policy::parse_policy("a b 2of2"));
  auto uk = keygen(*mk_, *pp_, attrs({"a"}));
  EXPECT_EQ(error_of([&] { kem_decrypt(*pp_, uk, enc.ciphertext); }),
            Errc::kSatisfactionFailure);
}

TEST_F(AbeTest, ThreeAttributeRule) {
  const std::string rule = "designation:professor department:cs file-type:pdf 3of3";
  EXPECT_TRUE(round_trip(rule, attrs({"designation:professor", "department:cs", "file-type:pdf"})));
  EXPECT_FALSE(round_trip(rule, attrs({"designation:professor", "file-type:pdf"})));
}

TEST_F(AbeTest, NestedPolicy) {
  const std::string nested = "a b 1of2 c 2of2";
  EXPECT_TRUE(policy::satisfies(policy::parse_policy(nested), attrs({"b", "c"})).satisfied);
  EXPECT_FALSE(policy::satisfies(policy::parse_policy(nested), attrs({"a", "b"})).satisfied);
  EXPECT_TRUE(round_trip(nested, attrs({"b", "c"})));
  EXPECT_FALSE(round_trip(nested, attrs({"a", "b"})));
}

TEST_F(AbeTest, ThresholdGatesUseInterpolation) {
  EXPECT_TRUE(round_trip("a b c d e 3of5", attrs({"b", "d", "e"})));
  EXPECT_TRUE(round_trip("a b c d e 3of5", attrs({"a", "b", "c", "d", "e"})));
  EXPECT_FALSE(round_trip("a b c d e 3of5", attrs({"a", "e"})));
  EXPECT_TRUE(round_trip("a a 2of2", attrs({"a"})));
}

TEST_F(AbeTest, CollusionAtApiLevel) {
  auto enc = kem_encrypt(*pp_, policy::parse_policy("a b 2of2"));
  auto ka = keygen(*mk_, *pp_, attrs({"a"}));
  auto kb = keygen(*mk_, *pp_, attrs({"b"}));
  EXPECT_EQ(error_of([&] { kem_decrypt(*pp_, ka, enc.ciphertext); }),
            Errc::kSatisfactionFailure);
  EXPECT_EQ(error_of([&] { kem_decrypt(*pp_, kb, enc.ciphertext); }),
            Errc::kSatisfactionFailure);
  // Pasting b's component into a's key yields a key that fails the self-check
  // and cannot recover the secret.
  auto comps = ka.components();
  comps.emplace(Attribute("b"), kb.components().at(Attribute("b")));
  UserKey frankenstein(ka.d(), comps);
  EXPECT_FALSE(verify_user_key(*pp_, frankenstein));
  EXPECT_NE(kem_decrypt(*pp_, frankenstein, enc.ciphertext), enc.secret);
}

TEST_F(AbeTest, DecryptSucceedsIffSatisfied) {
  auto names = test_support::universe(6);
  test_support::RandomPolicyGenerator gen(101, names);
  int successes = 0;
  for (int t = 0; t < 200; ++t) {
    auto policy = gen.next(8, 3);
    auto subset = gen.random_subset();
    if (subset.empty()) subset.insert(names[0]);
    bool expected = test_support::oracle_satisfied(policy.root(), subset);
    auto enc = kem_encrypt(*pp_, policy);
    auto uk = keygen(*mk_, *pp_, test_support::to_attribute_set(subset));
    bool ok = false;
    try {
      ok = kem_decrypt(*pp_, uk, enc.ciphertext) == enc.secret;
      ASSERT_TRUE(ok) << "wrong secret for " << policy.text();
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), Errc::kSatisfactionFailure);
    }
    ASSERT_EQ(ok, expected) << policy.text();
    successes += ok;
  }
  // Both outcomes must be exercised for the check to mean anything.
  EXPECT_GT(successes, 20);
  EXPECT_LT(successes, 180);
}

TEST_F(AbeTest, SerializationRoundTrips) {
  auto names = test_support::universe(5);
  test_support::RandomPolicyGenerator gen(5, names);
  for (int i = 0; i < 1000; ++i) {
    auto policy = gen.next(3, 2);
    auto ct = kem_encrypt(*pp_, policy).ciphertext;
    auto bytes = ct.encode();
    ASSERT_EQ(KemCiphertext::decode(bytes), ct);
    ASSERT_EQ(KemCiphertext::decode(bytes).encode(), bytes);

    auto subset = gen.random_subset();
    if (subset.empty()) subset.insert(names[i % names.size()]);
    if (i % 4 == 0) {
      auto uk = keygen(*mk_, *pp_, test_support::to_attribute_set(subset));
      ASSERT_EQ(UserKey::decode(uk.encode()), uk);
    }
  }
  EXPECT_EQ(PublicParams::decode(pp_->encode()).encode(), pp_->encode());
  EXPECT_EQ(MasterKeyAccess::encode(MasterKeyAccess::decode(MasterKeyAccess::encode(*mk_))),
            MasterKeyAccess::encode(*mk_));
}

TEST_F(AbeTest, MalformedInputsAreRejected) {
  auto ct = kem_encrypt(*pp_, policy::parse_policy("a b 2of2")).ciphertext;
  auto bytes = ct.encode();
  for (std::size_t cut : {std::size_t{0}, std::size_t{3}, bytes.size() / 2, bytes.size() - 1}) {
    Bytes truncated(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(cut));
    EXPECT_EQ(error_of([&] { KemCiphertext::decode(truncated); }), Errc::kMalformedCiphertext);
  }
  // Body for a two-leaf policy under a one-leaf policy.
  EXPECT_EQ(error_of([&] {
              KemCiphertext::decode_body(policy::parse_policy("a"), ct.encode_body());
            }),
            Errc::kMalformedCiphertext);

  auto uk = keygen(*mk_, *pp_, attrs({"a"})).encode();
  uk.pop_back();
  EXPECT_EQ(error_of([&] { UserKey::decode(uk); }), Errc::kMalformedKey);
  auto pp = pp_->encode();
  pp[0] = 9;
  EXPECT_EQ(error_of([&] { PublicParams::decode(pp); }), Errc::kMalformedKey);
}

}  // namespace
}  // namespace cpabe::abe
