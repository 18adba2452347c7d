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

#include "cpabe/enclave/enclave.hpp"

#include <optional>

#include "cpabe/abe/container.hpp"
#include "cpabe/abe/master_key_access.hpp"
#include "cpabe/attestation/provisioning.hpp"
#include "cpabe/common/crypto.hpp"
#include "cpabe/enclave/frame.hpp"

namespace cpabe::enclave {
namespace {

using abe::MasterKey;
using abe::PublicParams;
using policy::PolicyTree;

struct PendingAttestation {
  crypto::X25519KeyPair ephemeral;
  attestation::Quote quote;
};

void expect_fields(const EcallRequest& req, std::size_t n) {
  if (req.fields.size() != n) {
    fail(Errc::kMalformedFrame, "expected " + std::to_string(n) + " fields, got " +
                                    std::to_string(req.fields.size()));
  }
}

std::string field_string(const Bytes& b) { return to_string(b); }

policy::AttributeSet parse_attributes(const Bytes& field) {
  try {
    return policy::parse_attribute_list(to_string(field));
  } catch (const Error& e) {
    fail(Errc::kInvalidArgument, e.what());
  }
}

PolicyTree parse_provisioned(std::string_view text) {
  try {
    return policy::parse_policy(text);
  } catch (const Error& e) {
    fail(Errc::kBadPolicy, e.what());
  }
}

}  // namespace

struct Enclave::State {
  EnclaveConfig config;
  std::shared_ptr<const Platform> platform;
  std::shared_ptr<OcallHandler> ocall;
  Measurement measurement;

  std::optional<PublicParams> pp;
  std::optional<MasterKey> mk;
  std::optional<PolicyTree> policy;
  std::optional<PendingAttestation> pending;

  EnclaveStage stage() const {
    if (!pp) return EnclaveStage::kEmpty;
    return policy ? EnclaveStage::kReady : EnclaveStage::kKeyed;
  }

  Bytes seal_bytes(ByteView data) const {
    return seal(platform->device_secret, measurement, data).encode();
  }

  Bytes unseal_bytes(ByteView blob) const {
    return unseal(platform->device_secret, measurement, blob);
  }

  PublicParams unseal_public(ByteView blob) const {
    try {
      return PublicParams::decode(unseal_bytes(blob));
    } catch (const Error& e) {
      if (e.code() == Errc::kSealError) throw;
      fail(Errc::kSealError, std::string("sealed public params corrupt: ") + e.what());
    }
  }

  MasterKey unseal_master(ByteView blob) const {
    auto raw = unseal_bytes(blob);
    try {
      auto mk = abe::MasterKeyAccess::decode(raw);
      crypto::cleanse(raw);
      return mk;
    } catch (const Error& e) {
      crypto::cleanse(raw);
      fail(Errc::kSealError, std::string("sealed master key corrupt: ") + e.what());
    }
  }

  // Optional sealed input: empty means "use what the enclave holds".
  PublicParams public_from(const Bytes& sealed) const {
    if (!sealed.empty()) return unseal_public(sealed);
    if (!pp) fail(Errc::kNoKeys, "no keys loaded");
    return *pp;
  }

  MasterKey master_from(const Bytes& sealed) const {
    if (!sealed.empty()) return unseal_master(sealed);
    if (!mk) fail(Errc::kNoKeys, "no keys loaded");
    return *mk;
  }

  Bytes read(std::string_view id) {
    try {
      return ocall->read_input(id);
    } catch (const std::exception& e) {
      fail(Errc::kOcallFailure, std::string("read_input failed: ") + e.what());
    }
  }

  void write(std::string_view id, ByteView data) {
    try {
      ocall->write_output(id, data);
    } catch (const std::exception& e) {
      fail(Errc::kOcallFailure, std::string("write_output failed: ") + e.what());
    }
  }

  std::vector<Bytes> op_setup(const EcallRequest& req) {
    expect_fields(req, 0);
    if (pp) fail(Errc::kAlreadySetUp, "keys already present");
    auto [new_pp, new_mk] = abe::setup(128);
    auto pp_bytes = new_pp.encode();
    auto mk_bytes = abe::MasterKeyAccess::encode(new_mk);
    std::vector<Bytes> out{seal_bytes(pp_bytes), seal_bytes(mk_bytes), pp_bytes};
    crypto::cleanse(mk_bytes);
    pp = std::move(new_pp);
    mk = std::move(new_mk);
    return out;
  }

  std::vector<Bytes> op_load_keys(const EcallRequest& req) {
    expect_fields(req, 3);
    if (pp) fail(Errc::kAlreadySetUp, "keys already present");
    auto new_pp = unseal_public(req.fields[0]);
    auto new_mk = unseal_master(req.fields[1]);
    if (!abe::verify_key_pair(new_pp, new_mk)) {
      fail(Errc::kSealError, "sealed public params and master key do not match");
    }
    std::optional<PolicyTree> new_policy;
    if (!req.fields[2].empty()) {
      new_policy = parse_provisioned(to_string(unseal_bytes(req.fields[2])));
    }
    pp = std::move(new_pp);
    mk = std::move(new_mk);
    policy = std::move(new_policy);
    return {pp->encode(), to_bytes(policy ? policy->text() : "")};
  }

  std::vector<Bytes> op_get_quote(const EcallRequest& req) {
    expect_fields(req, 1);
    if (req.fields[0].size() != 16) fail(Errc::kMalformedFrame, "nonce must be 16 bytes");
    attestation::Nonce nonce;
    std::copy(req.fields[0].begin(), req.fields[0].end(), nonce.begin());
    auto ephemeral = crypto::X25519KeyPair::generate();
    auto quote = platform->quoting_key.sign(
        measurement, attestation::make_report_data(ephemeral.public_key(), nonce));
    pending.emplace(PendingAttestation{std::move(ephemeral), quote});
    return {quote.encode()};
  }

  std::vector<Bytes> op_provision(const EcallRequest& req) {
    expect_fields(req, 1);
    if (!pp) fail(Errc::kNoKeys, "provisioning requires keys");
    if (!pending) fail(Errc::kNotAttested, "no attestation in progress");
    // The ephemeral key is single-use whatever the outcome.
    auto session = std::move(*pending);
    pending.reset();
    auto response = attestation::ProvisioningResponse::decode(req.fields[0]);
    auto text = attestation::open_provisioned_policy(response, session.quote, session.ephemeral,
                                                     config.verifier_public_key);
    auto tree = parse_provisioned(text);
    auto sealed = seal_bytes(as_bytes(tree.text()));
    policy = std::move(tree);
    return {std::move(sealed), to_bytes(policy->text())};
  }

  std::vector<Bytes> op_encrypt(const EcallRequest& req) {
    expect_fields(req, 4);
    auto in_id = field_string(req.fields[0]);
    auto out_id = field_string(req.fields[1]);
    auto params = public_from(req.fields[2]);
    std::optional<PolicyTree> tree;
    if (!req.fields[3].empty()) {
      tree = parse_provisioned(to_string(unseal_bytes(req.fields[3])));
    } else if (policy) {
      tree = policy;
    } else {
      fail(Errc::kNoPolicy, "no policy provisioned");
    }
    auto plaintext = read(in_id);
    auto container = abe::encrypt_file(params, *tree, plaintext).encode();
    crypto::cleanse(plaintext);
    auto digest = crypto::sha256(container);
    write(out_id, container);
    return {to_bytes(out_id), Bytes(digest.begin(), digest.end())};
  }

  std::vector<Bytes> op_decrypt(const EcallRequest& req) {
    expect_fields(req, 5);
    auto attrs = parse_attributes(req.fields[0]);
    auto in_id = field_string(req.fields[1]);
    auto out_id = field_string(req.fields[2]);
    auto params = public_from(req.fields[3]);
    auto master = master_from(req.fields[4]);
    auto raw = read(in_id);
    auto container = abe::CiphertextContainer::decode(raw);
    auto uk = abe::keygen(master, params, attrs);
    auto plaintext = abe::decrypt_file(params, uk, container);
    write(out_id, plaintext);
    crypto::cleanse(plaintext);
    return {to_bytes(out_id)};
  }

  std::vector<Bytes> op_keygen(const EcallRequest& req) {
    expect_fields(req, 3);
    auto attrs = parse_attributes(req.fields[0]);
    auto params = public_from(req.fields[1]);
    auto master = master_from(req.fields[2]);
    return {abe::keygen(master, params, attrs).encode()};
  }

  EcallResponse dispatch(const EcallRequest& req) {
    switch (req.opcode) {
      case Opcode::kSetup: return {Status::kOk, op_setup(req)};
      case Opcode::kLoadKeys: return {Status::kOk, op_load_keys(req)};
      case Opcode::kGetQuote: return {Status::kOk, op_get_quote(req)};
      case Opcode::kProvisionPolicy: return {Status::kOk, op_provision(req)};
      case Opcode::kEncrypt: return {Status::kOk, op_encrypt(req)};
      case Opcode::kDecrypt: return {Status::kOk, op_decrypt(req)};
      case Opcode::kKeygen: return {Status::kOk, op_keygen(req)};
    }
    fail(Errc::kUnknownOpcode, "unknown opcode");
  }
};

std::shared_ptr<Platform> load_or_create_platform(const std::filesystem::path& device_secret,
                                                  const std::filesystem::path& quoting_key) {
  return std::make_shared<Platform>(Platform{load_or_create_device_secret(device_secret),
                                             attestation::QuotingKey::load_or_create(quoting_key)});
}

Enclave::Enclave(EnclaveConfig config, std::shared_ptr<const Platform> platform,
                 std::shared_ptr<OcallHandler> ocall)
    : measurement_(measure(config.code_identity, config.config_version)),
      state_(std::make_unique<State>()) {
  if (!platform || !ocall) fail(Errc::kInvalidArgument, "enclave needs a platform and OCALLs");
  state_->config = std::move(config);
  state_->platform = std::move(platform);
  state_->ocall = std::move(ocall);
  state_->measurement = measurement_;
}

Enclave::~Enclave() = default;

EnclaveStage Enclave::stage() const {
  std::lock_guard lock(mu_);
  return state_->stage();
}

Bytes Enclave::ecall(ByteView request_frame) {
  std::lock_guard lock(mu_);
  EcallResponse response;
  try {
    response = state_->dispatch(EcallRequest::decode(request_frame));
  } catch (const Error& e) {
    response = {status_from_errc(e.code()), {to_bytes(e.what())}};
  } catch (const std::exception& e) {
    response = {Status::kInternal, {to_bytes(e.what())}};
  }
  return response.encode();
}

}  // namespace cpabe::enclave
