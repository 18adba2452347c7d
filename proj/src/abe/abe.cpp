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

#include "cpabe/abe/abe.hpp"

#include "cpabe/abe/master_key_access.hpp"
#include "cpabe/common/crypto.hpp"
#include "cpabe/common/error.hpp"
#include "cpabe/policy/satisfaction.hpp"

namespace cpabe::abe {
namespace {

constexpr std::uint8_t kParamsVersion = 1;
constexpr std::uint8_t kMasterVersion = 1;
constexpr std::uint8_t kUserKeyVersion = 1;
constexpr std::string_view kSecretLabel = "cpabe-enclave/kem-secret/v1";

template <typename Point>
void put(ByteWriter& w, const Point& p) {
  auto b = p.to_bytes();
  w.raw(b);
}

G1 read_g1(ByteReader& r, Errc code) { return G1::from_bytes(r.raw(G1::kCompressedSize), code); }
G2 read_g2(ByteReader& r, Errc code) { return G2::from_bytes(r.raw(G2::kCompressedSize), code); }
Gt read_gt(ByteReader& r, Errc code) { return Gt::from_bytes(r.raw(Gt::kSize), code); }

G2 hash_attribute(const Attribute& a) { return G2::hash(as_bytes(a.str())); }

SharedSecret derive_secret(const Gt& m) {
  auto encoded = m.to_bytes();
  return crypto::sha256({as_bytes(kSecretLabel), encoded});
}

// Evaluates the polynomial with the given coefficients (constant term first).
Scalar evaluate(const std::vector<Scalar>& coeffs, std::uint64_t x) {
  Scalar xs = Scalar::from_u64(x);
  Scalar acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * xs + *it;
  return acc;
}

void share_secret(const policy::PolicyNode& node, const Scalar& share,
                  std::vector<LeafComponent>& out) {
  if (node.is_leaf()) {
    out.push_back({G1::generator() * share, hash_attribute(node.attribute()) * share});
    return;
  }
  std::vector<Scalar> coeffs{share};
  for (std::uint32_t i = 1; i < node.threshold(); ++i) coeffs.push_back(Scalar::random());
  const auto& children = node.children();
  for (std::size_t i = 0; i < children.size(); ++i) {
    share_secret(children[i], evaluate(coeffs, i + 1), out);
  }
}

/// Lagrange coefficient at 0 for abscissa `xi` over the set `xs`.
Scalar lagrange_at_zero(std::uint64_t xi, const std::vector<std::uint64_t>& xs) {
  Scalar num = Scalar::from_u64(1);
  Scalar den = Scalar::from_u64(1);
  Scalar xi_s = Scalar::from_u64(xi);
  for (auto xj : xs) {
    if (xj == xi) continue;
    Scalar xj_s = Scalar::from_u64(xj);
    num = num * xj_s;
    den = den * (xj_s - xi_s);
  }
  return num * den.inverse();
}

struct SelectedLeaf {
  std::size_t index;
  Scalar coefficient;
};

// Walks the satisfied subtrees, accumulating the product of Lagrange
// coefficients along each path.
void collect_selected(const policy::PolicyNode& node, const policy::NodeSatisfaction& sat,
                      std::size_t leaf_offset, const Scalar& coefficient,
                      std::vector<SelectedLeaf>& out) {
  if (node.is_leaf()) {
    out.push_back({leaf_offset, coefficient});
    return;
  }
  const auto& children = node.children();
  std::vector<std::size_t> offsets(children.size());
  for (std::size_t i = 0, off = leaf_offset; i < children.size(); ++i) {
    offsets[i] = off;
    off += children[i].leaf_count();
  }
  std::vector<std::uint64_t> xs;
  for (auto idx : sat.selected) xs.push_back(idx + 1);
  for (auto idx : sat.selected) {
    collect_selected(children[idx], sat.children[idx], offsets[idx],
                     coefficient * lagrange_at_zero(idx + 1, xs), out);
  }
}

}  // namespace

// PublicParams

Bytes PublicParams::encode() const {
  ByteWriter w;
  w.u8(kParamsVersion);
  w.field(group_id);
  put(w, g1);
  put(w, g2);
  put(w, h);
  put(w, egg_alpha);
  return w.take();
}

PublicParams PublicParams::decode(ByteView bytes) {
  constexpr auto kCode = Errc::kMalformedKey;
  ByteReader r(bytes, kCode);
  if (r.u8() != kParamsVersion) fail(kCode, "unsupported public parameter version");
  PublicParams pp;
  pp.group_id = r.field_string();
  if (pp.group_id != pairing::kGroupId) fail(kCode, "unknown group '" + pp.group_id + "'");
  pp.g1 = read_g1(r, kCode);
  pp.g2 = read_g2(r, kCode);
  pp.h = read_g1(r, kCode);
  pp.egg_alpha = read_gt(r, kCode);
  r.expect_done();
  if (pp.g1.is_identity() || pp.g2.is_identity() || pp.h.is_identity() ||
      pp.egg_alpha.is_identity()) {
    fail(kCode, "public parameters contain the identity");
  }
  return pp;
}

// MasterKey

Bytes MasterKeyAccess::encode(const MasterKey& mk) {
  ByteWriter w;
  w.u8(kMasterVersion);
  w.raw(mk.beta_.to_bytes());
  put(w, mk.g2_alpha_);
  return w.take();
}

MasterKey MasterKeyAccess::decode(ByteView bytes) {
  constexpr auto kCode = Errc::kMalformedKey;
  ByteReader r(bytes, kCode);
  if (r.u8() != kMasterVersion) fail(kCode, "unsupported master key version");
  auto beta = Scalar::from_bytes(r.raw(Scalar::kSize), kCode);
  auto g2_alpha = read_g2(r, kCode);
  r.expect_done();
  if (beta.is_zero()) fail(kCode, "zero master scalar");
  return MasterKey(beta, g2_alpha);
}

// UserKey

UserKey::UserKey(G2 d, std::map<Attribute, UserKeyComponent> components)
    : d_(d), components_(std::move(components)) {
  if (components_.empty()) fail(Errc::kEmptyAttributeSet, "user key without attributes");
}

AttributeSet UserKey::attributes() const {
  AttributeSet out;
  for (const auto& [attr, _] : components_) out.insert(attr);
  return out;
}

std::array<std::uint8_t, 32> UserKey::fingerprint() const {
  auto encoded = d_.to_bytes();
  return crypto::sha256(encoded);
}

Bytes UserKey::encode() const {
  ByteWriter w;
  w.u8(kUserKeyVersion);
  w.field(pairing::kGroupId);
  put(w, d_);
  w.u32(static_cast<std::uint32_t>(components_.size()));
  for (const auto& [attr, comp] : components_) {
    w.field(attr.str());
    put(w, comp.d);
    put(w, comp.d_prime);
  }
  return w.take();
}

UserKey UserKey::decode(ByteView bytes) {
  constexpr auto kCode = Errc::kMalformedKey;
  ByteReader r(bytes, kCode);
  if (r.u8() != kUserKeyVersion) fail(kCode, "unsupported user key version");
  if (r.field_string() != pairing::kGroupId) fail(kCode, "user key for another group");
  auto d = read_g2(r, kCode);
  auto count = r.u32();
  // Each component takes at least 4 + 1 + 96 + 48 bytes.
  if (count == 0 || count > r.remaining() / 149) fail(kCode, "bad component count");
  std::map<Attribute, UserKeyComponent> comps;
  for (std::uint32_t i = 0; i < count; ++i) {
    auto name = r.field_string();
    std::optional<Attribute> attr;
    try {
      attr.emplace(name);
    } catch (const Error&) {
      fail(kCode, "invalid attribute in user key");
    }
    UserKeyComponent comp{read_g2(r, kCode), read_g1(r, kCode)};
    if (attr->str() != name || !comps.emplace(*attr, comp).second) {
      fail(kCode, "non-canonical or duplicate attribute in user key");
    }
  }
  r.expect_done();
  return UserKey(d, std::move(comps));
}

// KemCiphertext

Bytes KemCiphertext::encode_body() const {
  ByteWriter w;
  put(w, masked);
  put(w, root);
  w.u32(static_cast<std::uint32_t>(leaves.size()));
  for (const auto& leaf : leaves) {
    put(w, leaf.c);
    put(w, leaf.c_prime);
  }
  return w.take();
}

KemCiphertext KemCiphertext::decode_body(PolicyTree policy, ByteView body) {
  constexpr auto kCode = Errc::kMalformedCiphertext;
  ByteReader r(body, kCode);
  auto masked = read_gt(r, kCode);
  auto root = read_g1(r, kCode);
  auto count = r.u32();
  if (count != policy.leaf_count()) {
    fail(kCode, "leaf component count " + std::to_string(count) + " does not match policy (" +
                    std::to_string(policy.leaf_count()) + " leaves)");
  }
  if (static_cast<std::size_t>(count) * (G1::kCompressedSize + G2::kCompressedSize) !=
      r.remaining()) {
    fail(kCode, "leaf component section has the wrong length");
  }
  std::vector<LeafComponent> leaves;
  leaves.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    auto c = read_g1(r, kCode);
    auto c_prime = read_g2(r, kCode);
    leaves.push_back({c, c_prime});
  }
  r.expect_done();
  return KemCiphertext{std::move(policy), masked, root, std::move(leaves)};
}

Bytes KemCiphertext::encode() const {
  ByteWriter w;
  w.field(policy.text());
  w.raw(encode_body());
  return w.take();
}

KemCiphertext KemCiphertext::decode(ByteView bytes) {
  constexpr auto kCode = Errc::kMalformedCiphertext;
  ByteReader r(bytes, kCode);
  auto text = r.field_string();
  std::optional<PolicyTree> policy;
  try {
    policy.emplace(policy::parse_policy(text));
  } catch (const Error& e) {
    fail(kCode, std::string("embedded policy: ") + e.what());
  }
  return decode_body(std::move(*policy), r.raw(r.remaining()));
}

// Scheme

std::pair<PublicParams, MasterKey> setup(int security_bits) {
  if (security_bits != 128) {
    fail(Errc::kUnsupportedSecurityLevel,
         std::to_string(security_bits) + "-bit security is not available");
  }
  auto alpha = Scalar::random_nonzero();
  auto beta = Scalar::random_nonzero();
  PublicParams pp;
  pp.group_id = std::string(pairing::kGroupId);
  pp.g1 = G1::generator();
  pp.g2 = G2::generator();
  pp.h = pp.g1 * beta;
  pp.egg_alpha = pairing::pair(pp.g1, pp.g2).pow(alpha);
  return {pp, MasterKey(beta, pp.g2 * alpha)};
}

UserKey keygen(const MasterKey& mk, const PublicParams& pp, const AttributeSet& attrs) {
  if (attrs.empty()) fail(Errc::kEmptyAttributeSet, "keygen needs at least one attribute");
  auto r = Scalar::random();
  auto beta_inv = mk.beta_.inverse();
  // g2^((alpha + r) / beta) = (g2^alpha * g2^r)^(1/beta)
  auto g2_r = pp.g2 * r;
  auto d = (mk.g2_alpha_ + g2_r) * beta_inv;
  std::map<Attribute, UserKeyComponent> comps;
  for (const auto& attr : attrs) {
    auto rj = Scalar::random();
    comps.emplace(attr, UserKeyComponent{g2_r + hash_attribute(attr) * rj, pp.g1 * rj});
  }
  return UserKey(d, std::move(comps));
}

KemEncapsulation kem_encrypt(const PublicParams& pp, const PolicyTree& policy) {
  auto s = Scalar::random();
  auto m = pairing::pair(pp.g1, pp.g2).pow(Scalar::random());
  std::vector<LeafComponent> leaves;
  leaves.reserve(policy.leaf_count());
  share_secret(policy.root(), s, leaves);
  KemCiphertext ct{policy, m * pp.egg_alpha.pow(s), pp.h * s, std::move(leaves)};
  return {derive_secret(m), std::move(ct)};
}

SharedSecret kem_decrypt(const PublicParams& pp, const UserKey& uk, const KemCiphertext& ct) {
  (void)pp;
  if (ct.leaves.size() != ct.policy.leaf_count()) {
    fail(Errc::kMalformedCiphertext, "leaf components do not match the policy");
  }
  auto sat = policy::satisfies(ct.policy, uk.attributes());
  if (!sat.satisfied) {
    fail(Errc::kSatisfactionFailure, "attributes do not satisfy the policy");
  }

  std::vector<SelectedLeaf> selected;
  collect_selected(ct.policy.root(), sat.root, 0, Scalar::from_u64(1), selected);

  auto leaf_attrs = ct.policy.leaves();
  std::vector<std::pair<G1, G2>> terms;
  terms.reserve(2 * selected.size() + 1);
  // e(C, D)^-1
  terms.emplace_back(-ct.root, uk.d());
  for (const auto& leaf : selected) {
    const auto& comp = uk.components().at(leaf_attrs[leaf.index]);
    const auto& ctl = ct.leaves[leaf.index];
    terms.emplace_back(ctl.c * leaf.coefficient, comp.d);
    terms.emplace_back(comp.d_prime * (-leaf.coefficient), ctl.c_prime);
  }
  auto m = ct.masked * pairing::multi_pair(terms);
  return derive_secret(m);
}

bool verify_key_pair(const PublicParams& pp, const MasterKey& mk) {
  if (!(pp.h == pp.g1 * mk.beta_)) return false;
  return pairing::pair(pp.h, mk.g2_alpha_) == pp.egg_alpha.pow(mk.beta_);
}

bool verify_user_key(const PublicParams& pp, const UserKey& uk) {
  auto e_r = pairing::pair(pp.h, uk.d()) * pp.egg_alpha.inverse();
  for (const auto& [attr, comp] : uk.components()) {
    std::pair<G1, G2> terms[] = {{pp.g1, comp.d}, {-comp.d_prime, hash_attribute(attr)}};
    if (!(pairing::multi_pair(terms) == e_r)) return false;
  }
  return true;
}

}  // namespace cpabe::abe
