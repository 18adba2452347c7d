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
#include <span>
#include <string_view>
#include <utility>

#include "blst.h"
#include "cpabe/common/bytes.hpp"

// Bilinear group provider: BLS12-381 through blst. G1 and G2 are the prime
// order r subgroups, Gt the order r subgroup of Fp12*, and
// e: G1 x G2 -> Gt the optimal ate pairing.
namespace cpabe::pairing {

/// Recorded in PublicParams so ciphertexts name the curve they were made on.
inline constexpr std::string_view kGroupId = "BLS12-381";

/// Element of Z_r, the common order of G1, G2 and Gt.
class Scalar {
 public:
  static constexpr std::size_t kSize = 32;

  Scalar();  // zero
  static Scalar from_u64(std::uint64_t v);
  /// Uniform over Z_r (512 random bits reduced mod r).
  static Scalar random();
  /// Uniform over Z_r \ {0}.
  static Scalar random_nonzero();
  /// Canonical big-endian encoding; throws Error(`code`) unless < r.
  static Scalar from_bytes(ByteView bytes, Errc code);

  std::array<std::uint8_t, kSize> to_bytes() const;
  bool is_zero() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  /// Throws Error(kInvalidArgument) on zero.
  Scalar inverse() const;

  bool operator==(const Scalar& o) const;

  /// Little-endian canonical scalar as consumed by blst's point multiplication.
  blst_scalar to_blst_scalar() const;

 private:
  blst_fr v_;
};

class G1 {
 public:
  static constexpr std::size_t kCompressedSize = 48;

  G1();  // identity
  static G1 generator();
  /// Rejects encodings off the curve or outside the subgroup with Error(`code`).
  static G1 from_bytes(ByteView bytes, Errc code);

  std::array<std::uint8_t, kCompressedSize> to_bytes() const;
  bool is_identity() const;

  G1 operator+(const G1& o) const;
  G1 operator-() const;
  G1 operator*(const Scalar& k) const;
  bool operator==(const G1& o) const;

  blst_p1_affine to_affine() const;

 private:
  blst_p1 p_;
};

class G2 {
 public:
  static constexpr std::size_t kCompressedSize = 96;

  G2();  // identity
  static G2 generator();
  static G2 from_bytes(ByteView bytes, Errc code);
  /// Hash-to-curve (SSWU, random oracle variant) under the toolkit's DST.
  static G2 hash(ByteView message);

  std::array<std::uint8_t, kCompressedSize> to_bytes() const;
  bool is_identity() const;

  G2 operator+(const G2& o) const;
  G2 operator-() const;
  G2 operator*(const Scalar& k) const;
  bool operator==(const G2& o) const;

  blst_p2_affine to_affine() const;

 private:
  blst_p2 p_;
};

class Gt {
 public:
  static constexpr std::size_t kSize = 576;

  Gt();  // identity
  static Gt from_bytes(ByteView bytes, Errc code);
  /// Twelve big-endian Fp coordinates in blst's tower order.
  std::array<std::uint8_t, kSize> to_bytes() const;

  bool is_identity() const;
  Gt operator*(const Gt& o) const;
  Gt inverse() const;
  /// Fixed-window exponentiation with constant-time table lookups.
  Gt pow(const Scalar& k) const;
  bool operator==(const Gt& o) const;

 private:
  friend Gt pair(const G1&, const G2&);
  friend Gt multi_pair(std::span<const std::pair<G1, G2>>);
  blst_fp12 v_;
};

Gt pair(const G1& p, const G2& q);
/// Product of pairings with a single final exponentiation.
Gt multi_pair(std::span<const std::pair<G1, G2>> terms);

}  // namespace cpabe::pairing
