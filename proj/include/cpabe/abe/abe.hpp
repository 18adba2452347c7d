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

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cpabe/abe/pairing.hpp"
#include "cpabe/common/bytes.hpp"
#include "cpabe/policy/attribute.hpp"
#include "cpabe/policy/policy.hpp"

// Ciphertext-policy ABE key encapsulation over threshold access trees.
//
// The construction is the large-universe tree scheme with attributes hashed
// into G2, written for an asymmetric pairing:
//
//   setup:    alpha, beta <- Z_r
//             PP = (g1, g2, h = g1^beta, Y = e(g1, g2)^alpha)
//             MK = (beta, g2^alpha)
//   keygen:   r <- Z_r;  D = g2^((alpha + r) / beta)
//             per attribute j: r_j <- Z_r
//               D_j = g2^r * H(j)^r_j,  D'_j = g1^r_j
//   encrypt:  s <- Z_r, M <- Gt;  C~ = M * Y^s,  C = h^s
//             s is shared down the tree (k-of-n gate: degree k-1 polynomial,
//             child i receives q(i + 1)); leaf y with share q_y:
//               C_y = g1^q_y,  C'_y = H(attr(y))^q_y
//   decrypt:  A = prod over selected leaves of
//               (e(C_y, D_j) / e(D'_j, C'_y))^Delta_y  = e(g1, g2)^(r s)
//             M = C~ * A / e(C, D)
//
// Delta_y is the product of the Lagrange coefficients at 0 along the path
// from the root. The 32-byte shared secret is SHA-256 over a label and the
// encoding of M.
namespace cpabe::abe {

using pairing::G1;
using pairing::G2;
using pairing::Gt;
using pairing::Scalar;
using policy::Attribute;
using policy::AttributeSet;
using policy::PolicyTree;

using SharedSecret = std::array<std::uint8_t, 32>;

struct PublicParams {
  std::string group_id;
  G1 g1;
  G2 g2;
  G1 h;          // g1^beta
  Gt egg_alpha;  // e(g1, g2)^alpha

  Bytes encode() const;
  /// Throws Error(kMalformedKey).
  static PublicParams decode(ByteView bytes);
};

class UserKey;

/// Master secret. Its only byte encoding is MasterKeyAccess in
/// cpabe/abe/master_key_access.hpp, which the enclave uses to seal it.
class MasterKey {
 public:
  MasterKey(const MasterKey&) = default;
  MasterKey& operator=(const MasterKey&) = default;

 private:
  friend struct MasterKeyAccess;
  friend std::pair<PublicParams, MasterKey> setup(int);
  friend UserKey keygen(const MasterKey&, const PublicParams&, const AttributeSet&);
  friend bool verify_key_pair(const PublicParams&, const MasterKey&);
  MasterKey(Scalar beta, G2 g2_alpha) : beta_(beta), g2_alpha_(g2_alpha) {}

  Scalar beta_;
  G2 g2_alpha_;
};

struct UserKeyComponent {
  G2 d;        // g2^r * H(attr)^r_j
  G1 d_prime;  // g1^r_j

  friend bool operator==(const UserKeyComponent&, const UserKeyComponent&) = default;
};

class UserKey {
 public:
  UserKey(G2 d, std::map<Attribute, UserKeyComponent> components);

  AttributeSet attributes() const;
  const G2& d() const { return d_; }
  const std::map<Attribute, UserKeyComponent>& components() const { return components_; }

  /// SHA-256 of the encoded base component; differs between keygen calls.
  std::array<std::uint8_t, 32> fingerprint() const;

  Bytes encode() const;
  /// Throws Error(kMalformedKey).
  static UserKey decode(ByteView bytes);

  friend bool operator==(const UserKey&, const UserKey&) = default;

 private:
  G2 d_;
  std::map<Attribute, UserKeyComponent> components_;
};

struct LeafComponent {
  G1 c;        // g1^q_y
  G2 c_prime;  // H(attr)^q_y

  friend bool operator==(const LeafComponent&, const LeafComponent&) = default;
};

struct KemCiphertext {
  PolicyTree policy;
  Gt masked;   // M * Y^s
  G1 root;     // h^s
  std::vector<LeafComponent> leaves;  // left-to-right leaf order

  /// Policy text followed by the body.
  Bytes encode() const;
  static KemCiphertext decode(ByteView bytes);

  /// Everything except the policy text; used inside file containers where
  /// the policy is carried in the header.
  Bytes encode_body() const;
  /// Throws Error(kMalformedCiphertext).
  static KemCiphertext decode_body(PolicyTree policy, ByteView body);

  friend bool operator==(const KemCiphertext&, const KemCiphertext&) = default;
};

struct KemEncapsulation {
  SharedSecret secret;
  KemCiphertext ciphertext;
};

/// Only 128-bit security (BLS12-381) is available; other levels throw
/// Error(kUnsupportedSecurityLevel).
std::pair<PublicParams, MasterKey> setup(int security_bits = 128);

/// Throws Error(kEmptyAttributeSet).
UserKey keygen(const MasterKey& mk, const PublicParams& pp, const AttributeSet& attrs);

KemEncapsulation kem_encrypt(const PublicParams& pp, const PolicyTree& policy);

/// Throws Error(kSatisfactionFailure) when the key's attributes do not
/// satisfy the policy and Error(kMalformedCiphertext) on structural errors.
SharedSecret kem_decrypt(const PublicParams& pp, const UserKey& uk, const KemCiphertext& ct);

/// e(h, g2^alpha) == Y^beta and h == g1^beta.
bool verify_key_pair(const PublicParams& pp, const MasterKey& mk);

/// Checks every component shares the same randomizer r and that D binds it
/// to alpha: e(g1, D_j) / e(D'_j, H(j)) == e(h, D) / Y for all j.
bool verify_user_key(const PublicParams& pp, const UserKey& uk);

}  // namespace cpabe::abe
