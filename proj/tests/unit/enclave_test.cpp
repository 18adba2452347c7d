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

#include <filesystem>
#include <random>
#include <thread>

#include "cpabe/abe/container.hpp"
#include "cpabe/abe/master_key_access.hpp"
#include "cpabe/common/file_io.hpp"
#include "cpabe/enclave/frame.hpp"
#include "cpabe/enclave/sealing.hpp"
#include "support/enclave_rig.hpp"
#include "support/errors.hpp"

namespace cpabe::enclave {
namespace {

using test_support::EnclaveRig;
using test_support::error_of;
using test_support::VerifierRig;

constexpr const char* kRule = "designation:professor department:cs file-type:pdf 3of3";
constexpr std::size_t kFileSize = 500 * 1024;

policy::AttributeSet attrs(std::string_view list) { return policy::parse_attribute_list(list); }

EcallResponse raw_call(Enclave& e, ByteView frame) { return EcallResponse::decode(e.ecall(frame)); }

TEST(MeasurementTest, DeterministicAndVersionBound) {
  EXPECT_EQ(measure("cpabe-enclave", 1), measure("cpabe-enclave", 1));
  EXPECT_NE(measure("cpabe-enclave", 1), measure("cpabe-enclave", 2));
  EXPECT_NE(measure("cpabe-enclave", 1), measure("cpabe-enclavf", 1));
  // Length prefixing keeps identity and version apart.
  EXPECT_NE(measure("a", 0x62000000u), measure("ab", 0));
}

class SealingTest : public ::testing::Test {
 protected:
  DeviceSecret device_ = generate_device_secret();
  Measurement m_ = measure("cpabe-enclave", 1);
};

TEST_F(SealingTest, RoundTripRandomPayloads) {
  for (int i = 0; i < 100; ++i) {
    auto data = crypto::random_bytes(1024);
    auto blob = seal(device_, m_, data).encode();
    ASSERT_EQ(blob.size(), SealedBlob::kHeaderSize + data.size() + 16);
    ASSERT_EQ(unseal(device_, m_, blob), data);
  }
  EXPECT_TRUE(unseal(device_, m_, seal(device_, m_, {}).encode()).empty());
}

TEST_F(SealingTest, LayoutStartsWithMagicAndMeasurement) {
  auto blob = seal(device_, m_, to_bytes("x")).encode();
  EXPECT_EQ(to_string(ByteView(blob).first(4)), "SEAL");
  EXPECT_TRUE(std::equal(m_.begin(), m_.end(), blob.begin() + 4));
}

TEST_F(SealingTest, FreshNoncePerSeal) {
  auto data = to_bytes("same payload");
  auto a = seal(device_, m_, data).encode();
  auto b = seal(device_, m_, data).encode();
  EXPECT_NE(a, b);
  EXPECT_EQ(unseal(device_, m_, a), data);
  EXPECT_EQ(unseal(device_, m_, b), data);
}

TEST_F(SealingTest, EveryBitFlipRejected) {
  auto blob = seal(device_, m_, crypto::random_bytes(1024)).encode();
  std::mt19937_64 rng(256);
  std::uniform_int_distribution<std::size_t> pick(0, blob.size() * 8 - 1);
  int rejected = 0;
  for (int i = 0; i < 256; ++i) {
    auto bit = pick(rng);
    auto mutated = blob;
    mutated[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    rejected += error_of([&] { unseal(device_, m_, mutated); }) == Errc::kSealError;
  }
  EXPECT_EQ(rejected, 256);
  // Header bits specifically.
  for (std::size_t bit = 0; bit < SealedBlob::kHeaderSize * 8; bit += 3) {
    auto mutated = blob;
    mutated[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    ASSERT_EQ(error_of([&] { unseal(device_, m_, mutated); }), Errc::kSealError) << bit;
  }
}

TEST_F(SealingTest, BoundToMeasurementAndDevice) {
  for (std::uint32_t v = 2; v < 52; ++v) {
    auto blob = seal(device_, m_, crypto::random_bytes(64));
    ASSERT_EQ(error_of([&] { unseal(device_, measure("cpabe-enclave", v), blob); }),
              Errc::kSealError);
    // Rewriting the embedded measurement does not help either.
    auto relabeled = blob;
    relabeled.measurement = measure("cpabe-enclave", v);
    ASSERT_EQ(error_of([&] { unseal(device_, relabeled.measurement, relabeled); }),
              Errc::kSealError);
  }
  auto blob = seal(device_, m_, to_bytes("x"));
  EXPECT_EQ(error_of([&] { unseal(generate_device_secret(), m_, blob); }), Errc::kSealError);
}

TEST_F(SealingTest, MalformedBlobs) {
  auto blob = seal(device_, m_, to_bytes("payload")).encode();
  for (std::size_t cut = 0; cut < SealedBlob::kHeaderSize + 16; ++cut) {
    Bytes t(blob.begin(), blob.begin() + static_cast<std::ptrdiff_t>(cut));
    ASSERT_EQ(error_of([&] { unseal(device_, m_, t); }), Errc::kSealError) << cut;
  }
}

TEST_F(SealingTest, DeviceSecretFile) {
  auto dir = std::filesystem::temp_directory_path() / ("cpabe-seal-" + to_hex(crypto::random_bytes(4)));
  auto path = dir / "device.key";
  auto created = load_or_create_device_secret(path);
  EXPECT_EQ(load_or_create_device_secret(path), created);
  EXPECT_EQ(load_device_secret(path), created);
  write_file_atomic(path, to_bytes("short"));
  EXPECT_EQ(error_of([&] { load_device_secret(path); }), Errc::kInvalidArgument);
  EXPECT_EQ(error_of([&] { load_device_secret(dir / "missing"); }), Errc::kIoError);
  std::filesystem::remove_all(dir);
}

TEST(FrameTest, RequestRoundTripAndErrors) {
  EcallRequest req{Opcode::kEncrypt, {to_bytes("in"), {}, to_bytes("x")}};
  auto frame = req.encode();
  EXPECT_EQ(frame[0], 0x03);
  auto back = EcallRequest::decode(frame);
  EXPECT_EQ(back.opcode, Opcode::kEncrypt);
  EXPECT_EQ(back.fields, req.fields);

  Bytes unknown{0xFF};
  EXPECT_EQ(error_of([&] { EcallRequest::decode(unknown); }), Errc::kUnknownOpcode);
  EXPECT_EQ(error_of([&] { EcallRequest::decode({}); }), Errc::kMalformedFrame);
  auto short_frame = frame;
  short_frame.pop_back();
  EXPECT_EQ(error_of([&] { EcallRequest::decode(short_frame); }), Errc::kMalformedFrame);
}

TEST(FrameTest, StatusMappingRoundTrips) {
  for (int s = 1; s < static_cast<int>(Status::kInternal); ++s) {
    auto status = static_cast<Status>(s);
    EXPECT_EQ(status_from_errc(errc_from_status(status)), status) << status_name(status);
  }
}

class EnclaveTest : public ::testing::Test {
 protected:
  EnclaveTest()
      : platform_(test_support::make_platform()),
        vr_(*platform_),
        rig_(platform_, vr_.key.public_key()) {}

  void make_ready() {
    setup_ = rig_.client.setup();
    test_support::attest_and_provision(rig_, *vr_.verifier, kRule);
  }

  std::shared_ptr<Platform> platform_;
  VerifierRig vr_;
  EnclaveRig rig_;
  SetupResult setup_{{}, {}, {}};
};

TEST_F(EnclaveTest, FreshEnclaveHasNoKeys) {
  EXPECT_EQ(rig_.enclave->stage(), EnclaveStage::kEmpty);
  rig_.ocall->put("in", to_bytes("hello"));
  EXPECT_EQ(error_of([&] { rig_.client.encrypt("in", "out"); }), Errc::kNoKeys);
  EXPECT_EQ(error_of([&] { rig_.client.decrypt(attrs("a"), "in", "out"); }), Errc::kNoKeys);
  EXPECT_EQ(error_of([&] { rig_.client.keygen(attrs("a")); }), Errc::kNoKeys);
  EXPECT_EQ(errc_name(Errc::kNoKeys), "StateError(NoKeys)");
}

TEST_F(EnclaveTest, FramingErrors) {
  Bytes unknown{0xFF};
  EXPECT_EQ(raw_call(*rig_.enclave, unknown).status, Status::kUnknownOpcode);
  Bytes zero{0x00};
  EXPECT_EQ(raw_call(*rig_.enclave, zero).status, Status::kUnknownOpcode);
  EXPECT_EQ(raw_call(*rig_.enclave, {}).status, Status::kMalformedFrame);
  // Declares 10 bytes, carries 2.
  Bytes truncated{0x06, 0, 0, 0, 10, 1, 2};
  EXPECT_EQ(raw_call(*rig_.enclave, truncated).status, Status::kMalformedFrame);
  // Setup takes no fields.
  EcallRequest extra{Opcode::kSetup, {to_bytes("x")}};
  EXPECT_EQ(raw_call(*rig_.enclave, extra.encode()).status, Status::kMalformedFrame);
  EcallRequest short_nonce{Opcode::kGetQuote, {Bytes(15)}};
  EXPECT_EQ(raw_call(*rig_.enclave, short_nonce.encode()).status, Status::kMalformedFrame);
  EXPECT_EQ(rig_.enclave->stage(), EnclaveStage::kEmpty);
}

TEST_F(EnclaveTest, SetupReturnsTwoSealedBlobs) {
  auto resp = raw_call(*rig_.enclave, EcallRequest{Opcode::kSetup, {}}.encode());
  ASSERT_EQ(resp.status, Status::kOk);
  ASSERT_EQ(resp.fields.size(), 3u);
  auto pub = SealedBlob::decode(resp.fields[0]);
  auto master = SealedBlob::decode(resp.fields[1]);
  EXPECT_EQ(pub.measurement, rig_.enclave->measurement());
  EXPECT_EQ(master.measurement, rig_.enclave->measurement());
  EXPECT_EQ(rig_.enclave->stage(), EnclaveStage::kKeyed);
  EXPECT_EQ(raw_call(*rig_.enclave, EcallRequest{Opcode::kSetup, {}}.encode()).status,
            Status::kAlreadySetUp);
}

TEST_F(EnclaveTest, SealedKeysPortableAcrossSameMeasurement) {
  auto s = rig_.client.setup();
  auto mk = abe::MasterKeyAccess::decode(
      unseal(platform_->device_secret, rig_.enclave->measurement(), s.sealed_master));
  EXPECT_TRUE(abe::verify_key_pair(s.public_params, mk));

  EnclaveRig fresh(platform_, vr_.key.public_key());
  auto loaded = fresh.client.load_keys({s.sealed_public, s.sealed_master, {}});
  EXPECT_EQ(loaded.public_params.encode(), s.public_params.encode());
  EXPECT_TRUE(loaded.policy_text.empty());
  EXPECT_EQ(fresh.enclave->stage(), EnclaveStage::kKeyed);
  EXPECT_EQ(error_of([&] { fresh.client.load_keys({s.sealed_public, s.sealed_master, {}}); }),
            Errc::kAlreadySetUp);

  EnclaveRig bumped(platform_, vr_.key.public_key(), 2);
  EXPECT_EQ(error_of([&] { bumped.client.load_keys({s.sealed_public, s.sealed_master, {}}); }),
            Errc::kSealError);
  EXPECT_EQ(bumped.enclave->stage(), EnclaveStage::kEmpty);
}

TEST_F(EnclaveTest, MismatchedSealedKeysRejected) {
  auto a = rig_.client.setup();
  EnclaveRig other(platform_, vr_.key.public_key());
  auto b = other.client.setup();
  EnclaveRig fresh(platform_, vr_.key.public_key());
  EXPECT_EQ(error_of([&] { fresh.client.load_keys({a.sealed_public, b.sealed_master, {}}); }),
            Errc::kSealError);
  // Swapped blobs authenticate but do not decode as the expected type.
  EXPECT_EQ(error_of([&] { fresh.client.load_keys({a.sealed_master, a.sealed_public, {}}); }),
            Errc::kSealError);
}

TEST_F(EnclaveTest, StateMachine) {
  rig_.client.setup();
  rig_.ocall->put("in", to_bytes("hello"));
  EXPECT_EQ(error_of([&] { rig_.client.encrypt("in", "out"); }), Errc::kNoPolicy);
  EXPECT_EQ(rig_.enclave->stage(), EnclaveStage::kKeyed);
  test_support::attest_and_provision(rig_, *vr_.verifier, kRule);
  EXPECT_EQ(rig_.enclave->stage(), EnclaveStage::kReady);
  rig_.client.encrypt("in", "out");
  EXPECT_EQ(error_of([&] { rig_.client.setup(); }), Errc::kAlreadySetUp);
}

TEST_F(EnclaveTest, ProvisioningBeforeSetupIsStateError) {
  auto challenge = vr_.verifier->issue_challenge();
  auto quote = rig_.client.get_quote(challenge);
  ASSERT_EQ(vr_.verifier->verify_quote(quote, challenge), attestation::Verdict::kAccepted);
  auto response = vr_.verifier->provision_policy(quote, kRule);
  EXPECT_EQ(error_of([&] { rig_.client.provision_policy(response); }), Errc::kNoKeys);
}

TEST_F(EnclaveTest, EncryptDecryptFlow) {
  make_ready();
  auto plaintext = crypto::random_bytes(kFileSize);
  rig_.ocall->put("plain", plaintext);
  auto enc = rig_.client.encrypt("plain", "sealed-file");
  EXPECT_EQ(enc.output_id, "sealed-file");
  auto container_bytes = *rig_.ocall->take("sealed-file");
  EXPECT_EQ(enc.container_digest, crypto::sha256(container_bytes));
  auto container = abe::CiphertextContainer::decode(container_bytes);
  EXPECT_EQ(container.policy_text, kRule);

  rig_.ocall->put("ct", container_bytes);
  rig_.client.decrypt(attrs("designation:professor,department:cs,file-type:pdf"), "ct", "pt");
  EXPECT_EQ(*rig_.ocall->take("pt"), plaintext);

  int writes = rig_.ocall->writes;
  EXPECT_EQ(error_of([&] {
              rig_.client.decrypt(attrs("designation:professor,file-type:pdf"), "ct", "pt");
            }),
            Errc::kSatisfactionFailure);
  EXPECT_EQ(rig_.ocall->writes, writes);
  EXPECT_FALSE(rig_.ocall->contains("pt"));

  auto tampered = container;
  tampered.body[tampered.body.size() / 2] ^= 0x40;
  rig_.ocall->put("bad", tampered.encode());
  EXPECT_EQ(error_of([&] {
              rig_.client.decrypt(attrs("designation:professor,department:cs,file-type:pdf"),
                                  "bad", "pt");
            }),
            Errc::kAuthenticationFailure);
  EXPECT_EQ(rig_.ocall->writes, writes);

  rig_.ocall->put("junk", to_bytes("not a container"));
  EXPECT_EQ(error_of([&] { rig_.client.decrypt(attrs("department:cs"), "junk", "pt"); }),
            Errc::kMalformedContainer);
}

TEST_F(EnclaveTest, DecryptRejectsBadAttributes) {
  make_ready();
  rig_.ocall->put("in", to_bytes("x"));
  rig_.client.encrypt("in", "ct");
  EcallRequest req{Opcode::kDecrypt, {to_bytes("3of3"), to_bytes("ct"), to_bytes("pt"), {}, {}}};
  EXPECT_EQ(raw_call(*rig_.enclave, req.encode()).status, Status::kInvalidArgument);
  req.fields[0].clear();
  EXPECT_EQ(raw_call(*rig_.enclave, req.encode()).status, Status::kInvalidArgument);
}

TEST_F(EnclaveTest, OcallFailurePropagates) {
  make_ready();
  rig_.ocall->put("in", to_bytes("x"));
  rig_.ocall->fail_reads = true;
  EXPECT_EQ(error_of([&] { rig_.client.encrypt("in", "out"); }), Errc::kOcallFailure);
  EXPECT_EQ(rig_.enclave->stage(), EnclaveStage::kReady);
  rig_.ocall->fail_reads = false;
  EXPECT_EQ(error_of([&] { rig_.client.encrypt("missing", "out"); }), Errc::kOcallFailure);
  rig_.client.encrypt("in", "out");
  EXPECT_TRUE(rig_.ocall->contains("out"));
}

TEST_F(EnclaveTest, SealedInputsServeStatelessCalls) {
  make_ready();
  auto sealed_policy = test_support::attest_and_provision(rig_, *vr_.verifier, "a b 2of2");
  SealedKeys keys{setup_.sealed_public, setup_.sealed_master, sealed_policy.sealed_policy};

  EnclaveRig stateless(platform_, vr_.key.public_key());
  stateless.ocall->put("in", to_bytes("payload"));
  stateless.client.encrypt("in", "ct", keys);
  stateless.client.decrypt(attrs("a,b"), "ct", "pt", keys);
  EXPECT_EQ(*stateless.ocall->take("pt"), to_bytes("payload"));
  EXPECT_EQ(stateless.enclave->stage(), EnclaveStage::kEmpty);

  auto uk = stateless.client.keygen(attrs("a,b"), keys);
  EXPECT_TRUE(abe::verify_user_key(setup_.public_params, uk));
  EXPECT_EQ(uk.attributes(), attrs("a,b"));
}

TEST_F(EnclaveTest, EnclaveAndDirectPathsInteroperate) {
  make_ready();
  auto mk = abe::MasterKeyAccess::decode(
      unseal(platform_->device_secret, rig_.enclave->measurement(), setup_.sealed_master));
  const auto& pp = setup_.public_params;
  auto all = attrs("designation:professor,department:cs,file-type:pdf");

  rig_.ocall->put("in", to_bytes("from enclave"));
  rig_.client.encrypt("in", "ct");
  auto c = abe::CiphertextContainer::decode(*rig_.ocall->take("ct"));
  EXPECT_EQ(abe::decrypt_file(pp, abe::keygen(mk, pp, all), c), to_bytes("from enclave"));

  auto direct = abe::encrypt_file(pp, policy::parse_policy(kRule), to_bytes("direct"));
  rig_.ocall->put("ct2", direct.encode());
  rig_.client.decrypt(all, "ct2", "pt2");
  EXPECT_EQ(*rig_.ocall->take("pt2"), to_bytes("direct"));
}

TEST_F(EnclaveTest, BoundaryNeverCarriesMasterKey) {
  make_ready();
  auto plaintext = crypto::random_bytes(4096);
  rig_.ocall->put("in", plaintext);
  rig_.client.encrypt("in", "ct");
  rig_.ocall->put("ct-in", *rig_.ocall->take("ct"));
  rig_.client.decrypt(attrs("designation:professor,department:cs,file-type:pdf"), "ct-in", "pt");
  rig_.client.keygen(attrs("department:cs"));

  auto mk_bytes = abe::MasterKeyAccess::encode(abe::MasterKeyAccess::decode(
      unseal(platform_->device_secret, rig_.enclave->measurement(), setup_.sealed_master)));
  ASSERT_GT(rig_.transcript.frames.size(), 10u);
  EXPECT_FALSE(rig_.transcript.contains(mk_bytes));
  EXPECT_EQ(rig_.transcript.leaked_windows(mk_bytes), 0u);
  // The scan itself finds things that did cross.
  EXPECT_TRUE(rig_.transcript.contains(plaintext));
}

TEST_F(EnclaveTest, ConcurrentCallsAreSerialized) {
  make_ready();
  constexpr int kThreads = 8;
  for (int i = 0; i < kThreads; ++i) {
    rig_.ocall->put("in" + std::to_string(i), to_bytes("payload " + std::to_string(i)));
  }
  std::vector<std::thread> threads;
  std::atomic<int> ok{0};
  for (int i = 0; i < kThreads; ++i) {
    threads.emplace_back([&, i] {
      auto id = std::to_string(i);
      rig_.client.encrypt("in" + id, "ct" + id);
      rig_.client.decrypt(attrs("designation:professor,department:cs,file-type:pdf"), "ct" + id,
                          "pt" + id);
      ok += rig_.ocall->take("pt" + id) == to_bytes("payload " + id);
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(ok.load(), kThreads);
}

}  // namespace
}  // namespace cpabe::enclave
