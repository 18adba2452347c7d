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

#include "cpabe/abe/container.hpp"

#include "cpabe/common/crypto.hpp"
#include "cpabe/common/error.hpp"

namespace cpabe::abe {

Bytes CiphertextContainer::header() const {
  ByteWriter w;
  w.raw(as_bytes(kMagic));
  w.u8(kVersion);
  w.field(policy_text);
  w.field(kem_body);
  w.raw(nonce);
  return w.take();
}

Bytes CiphertextContainer::encode() const {
  Bytes out = header();
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

CiphertextContainer CiphertextContainer::decode(ByteView bytes) {
  constexpr auto kCode = Errc::kMalformedContainer;
  ByteReader r(bytes, kCode);
  if (to_string(r.raw(kMagic.size())) != kMagic) fail(kCode, "bad magic");
  if (auto v = r.u8(); v != kVersion) {
    fail(kCode, "unsupported container version " + std::to_string(v));
  }
  CiphertextContainer c;
  c.policy_text = r.field_string();
  auto kem = r.field();
  c.kem_body.assign(kem.begin(), kem.end());
  auto nonce = r.raw(kDemNonceSize);
  std::copy(nonce.begin(), nonce.end(), c.nonce.begin());
  auto rest = r.raw(r.remaining());
  c.body.assign(rest.begin(), rest.end());
  return c;
}

CiphertextContainer encrypt_file(const PublicParams& pp, const PolicyTree& policy,
                                 ByteView plaintext) {
  return seal_container(policy, kem_encrypt(pp, policy), plaintext);
}

CiphertextContainer seal_container(const PolicyTree& policy, KemEncapsulation kem,
                                   ByteView plaintext) {
  CiphertextContainer c;
  c.policy_text = policy.text();
  c.kem_body = kem.ciphertext.encode_body();
  c.nonce = fresh_dem_nonce();
  c.body = dem_seal(kem.secret, c.nonce, plaintext, c.header());
  crypto::cleanse(kem.secret);
  return c;
}

Bytes decrypt_file(const PublicParams& pp, const UserKey& uk,
                   const CiphertextContainer& container) {
  std::optional<KemCiphertext> kem;
  try {
    kem.emplace(KemCiphertext::decode_body(policy::parse_policy(container.policy_text),
                                           container.kem_body));
  } catch (const Error& e) {
    fail(Errc::kMalformedContainer, e.what());
  }
  auto secret = kem_decrypt(pp, uk, *kem);
  auto header = container.header();
  auto plaintext = dem_decrypt(secret, container.nonce, container.body, header);
  crypto::cleanse(secret);
  return plaintext;
}

}  // namespace cpabe::abe
