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

#include "cpabe/abe/pairing.hpp"

#include <cstring>
#include <vector>

#include "cpabe/common/crypto.hpp"
#include "cpabe/common/error.hpp"

namespace cpabe::pairing {
namespace {

constexpr std::string_view kHashDst = "CPABE-ENCLAVE-V01-CS01-with-BLS12381G2_XMD:SHA-256_SSWU_RO_";
constexpr std::size_t kScalarBits = 255;
constexpr int kWindow = 4;

const blst_fr& fr_zero() {
  static const blst_fr zero{};
  return zero;
}

}  // namespace

// Scalar

Scalar::Scalar() : v_(fr_zero()) {}

Scalar Scalar::from_u64(std::uint64_t v) {
  const std::uint64_t limbs[4] = {v, 0, 0, 0};
  Scalar s;
  blst_fr_from_uint64(&s.v_, limbs);
  return s;
}

Scalar Scalar::random() {
  std::array<std::uint8_t, 64> wide{};
  crypto::random_fill(wide);
  blst_scalar reduced;
  blst_scalar_from_be_bytes(&reduced, wide.data(), wide.size());
  crypto::cleanse(wide);
  Scalar s;
  blst_fr_from_scalar(&s.v_, &reduced);
  std::memset(&reduced, 0, sizeof(reduced));
  return s;
}

Scalar Scalar::random_nonzero() {
  for (;;) {
    auto s = random();
    if (!s.is_zero()) return s;
  }
}

Scalar Scalar::from_bytes(ByteView bytes, Errc code) {
  if (bytes.size() != kSize) fail(code, "scalar encoding must be 32 bytes");
  blst_scalar raw;
  blst_scalar_from_bendian(&raw, bytes.data());
  if (!blst_scalar_fr_check(&raw)) fail(code, "scalar not reduced mod r");
  Scalar s;
  blst_fr_from_scalar(&s.v_, &raw);
  return s;
}

std::array<std::uint8_t, Scalar::kSize> Scalar::to_bytes() const {
  auto raw = to_blst_scalar();
  std::array<std::uint8_t, kSize> out{};
  blst_bendian_from_scalar(out.data(), &raw);
  return out;
}

bool Scalar::is_zero() const { return std::memcmp(&v_, &fr_zero(), sizeof(v_)) == 0; }

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r;
  blst_fr_add(&r.v_, &v_, &o.v_);
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar r;
  blst_fr_sub(&r.v_, &v_, &o.v_);
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r;
  blst_fr_mul(&r.v_, &v_, &o.v_);
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r;
  blst_fr_cneg(&r.v_, &v_, true);
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(Errc::kInvalidArgument, "inverse of zero scalar");
  Scalar r;
  blst_fr_inverse(&r.v_, &v_);
  return r;
}

// Montgomery form is canonical, so limb equality is value equality.
bool Scalar::operator==(const Scalar& o) const {
  return std::memcmp(&v_, &o.v_, sizeof(v_)) == 0;
}

blst_scalar Scalar::to_blst_scalar() const {
  blst_scalar out;
  blst_scalar_from_fr(&out, &v_);
  return out;
}

// G1

G1::G1() { std::memset(&p_, 0, sizeof(p_)); }

G1 G1::generator() {
  G1 g;
  g.p_ = *blst_p1_generator();
  return g;
}

G1 G1::from_bytes(ByteView bytes, Errc code) {
  if (bytes.size() != kCompressedSize) fail(code, "G1 encoding must be 48 bytes");
  blst_p1_affine aff;
  if (blst_p1_uncompress(&aff, bytes.data()) != BLST_SUCCESS) {
    fail(code, "invalid G1 encoding");
  }
  if (!blst_p1_affine_in_g1(&aff)) fail(code, "G1 point outside the prime-order subgroup");
  G1 g;
  blst_p1_from_affine(&g.p_, &aff);
  return g;
}

std::array<std::uint8_t, G1::kCompressedSize> G1::to_bytes() const {
  std::array<std::uint8_t, kCompressedSize> out{};
  blst_p1_compress(out.data(), &p_);
  return out;
}

bool G1::is_identity() const { return blst_p1_is_inf(&p_); }

G1 G1::operator+(const G1& o) const {
  G1 r;
  blst_p1_add_or_double(&r.p_, &p_, &o.p_);
  return r;
}

G1 G1::operator-() const {
  G1 r = *this;
  blst_p1_cneg(&r.p_, true);
  return r;
}

G1 G1::operator*(const Scalar& k) const {
  auto raw = k.to_blst_scalar();
  G1 r;
  blst_p1_mult(&r.p_, &p_, raw.b, kScalarBits);
  return r;
}

bool G1::operator==(const G1& o) const { return blst_p1_is_equal(&p_, &o.p_); }

blst_p1_affine G1::to_affine() const {
  blst_p1_affine aff;
  blst_p1_to_affine(&aff, &p_);
  return aff;
}

// G2

G2::G2() { std::memset(&p_, 0, sizeof(p_)); }

G2 G2::generator() {
  G2 g;
  g.p_ = *blst_p2_generator();
  return g;
}

G2 G2::from_bytes(ByteView bytes, Errc code) {
  if (bytes.size() != kCompressedSize) fail(code, "G2 encoding must be 96 bytes");
  blst_p2_affine aff;
  if (blst_p2_uncompress(&aff, bytes.data()) != BLST_SUCCESS) {
    fail(code, "invalid G2 encoding");
  }
  if (!blst_p2_affine_in_g2(&aff)) fail(code, "G2 point outside the prime-order subgroup");
  G2 g;
  blst_p2_from_affine(&g.p_, &aff);
  return g;
}

G2 G2::hash(ByteView message) {
  G2 g;
  blst_hash_to_g2(&g.p_, message.data(), message.size(),
                  reinterpret_cast<const byte*>(kHashDst.data()), kHashDst.size(), nullptr, 0);
  return g;
}

std::array<std::uint8_t, G2::kCompressedSize> G2::to_bytes() const {
  std::array<std::uint8_t, kCompressedSize> out{};
  blst_p2_compress(out.data(), &p_);
  return out;
}

bool G2::is_identity() const { return blst_p2_is_inf(&p_); }

G2 G2::operator+(const G2& o) const {
  G2 r;
  blst_p2_add_or_double(&r.p_, &p_, &o.p_);
  return r;
}

G2 G2::operator-() const {
  G2 r = *this;
  blst_p2_cneg(&r.p_, true);
  return r;
}

G2 G2::operator*(const Scalar& k) const {
  auto raw = k.to_blst_scalar();
  G2 r;
  blst_p2_mult(&r.p_, &p_, raw.b, kScalarBits);
  return r;
}

bool G2::operator==(const G2& o) const { return blst_p2_is_equal(&p_, &o.p_); }

blst_p2_affine G2::to_affine() const {
  blst_p2_affine aff;
  blst_p2_to_affine(&aff, &p_);
  return aff;
}

// Gt

Gt::Gt() : v_(*blst_fp12_one()) {}

namespace {

constexpr std::size_t kFpSize = 48;

template <typename Fn>
void for_each_fp(blst_fp12& v, Fn&& fn) {
  std::size_t i = 0;
  for (auto& fp6 : v.fp6) {
    for (auto& fp2 : fp6.fp2) {
      for (auto& fp : fp2.fp) fn(fp, i++);
    }
  }
}

}  // namespace

Gt Gt::from_bytes(ByteView bytes, Errc code) {
  if (bytes.size() != kSize) fail(code, "Gt encoding must be 576 bytes");
  Gt g;
  bool canonical = true;
  for_each_fp(g.v_, [&](blst_fp& fp, std::size_t i) {
    auto chunk = bytes.subspan(i * kFpSize, kFpSize);
    blst_fp_from_bendian(&fp, chunk.data());
    std::uint8_t back[kFpSize];
    blst_bendian_from_fp(back, &fp);
    canonical = canonical && std::memcmp(back, chunk.data(), kFpSize) == 0;
  });
  if (!canonical) fail(code, "Gt coordinate not reduced mod p");
  if (!blst_fp12_in_group(&g.v_)) fail(code, "Gt element outside the order-r subgroup");
  return g;
}

std::array<std::uint8_t, Gt::kSize> Gt::to_bytes() const {
  std::array<std::uint8_t, kSize> out{};
  auto copy = v_;
  for_each_fp(copy, [&](blst_fp& fp, std::size_t i) {
    blst_bendian_from_fp(out.data() + i * kFpSize, &fp);
  });
  return out;
}

bool Gt::is_identity() const { return blst_fp12_is_one(&v_); }

Gt Gt::operator*(const Gt& o) const {
  Gt r;
  blst_fp12_mul(&r.v_, &v_, &o.v_);
  return r;
}

// Elements of Gt lie in the cyclotomic subgroup, where the inverse is the
// conjugate.
Gt Gt::inverse() const {
  Gt r = *this;
  blst_fp12_conjugate(&r.v_);
  return r;
}

Gt Gt::pow(const Scalar& k) const {
  constexpr std::size_t kTable = 1u << kWindow;
  std::array<blst_fp12, kTable> table;
  table[0] = *blst_fp12_one();
  table[1] = v_;
  for (std::size_t i = 2; i < kTable; ++i) blst_fp12_mul(&table[i], &table[i - 1], &v_);

  auto exponent = k.to_bytes();  // big-endian, 256 bits
  Gt acc;
  bool first = true;
  for (auto byte : exponent) {
    for (int half = 1; half >= 0; --half) {
      unsigned digit = (byte >> (half * kWindow)) & (kTable - 1);
      if (!first) {
        for (int s = 0; s < kWindow; ++s) blst_fp12_cyclotomic_sqr(&acc.v_, &acc.v_);
      }
      first = false;
      // Scan the whole table so the memory access pattern is independent of
      // the digit.
      blst_fp12 selected;
      std::memset(&selected, 0, sizeof(selected));
      auto* out = reinterpret_cast<limb_t*>(&selected);
      for (std::size_t i = 0; i < kTable; ++i) {
        limb_t mask = static_cast<limb_t>(0) - static_cast<limb_t>(i == digit);
        const auto* in = reinterpret_cast<const limb_t*>(&table[i]);
        for (std::size_t w = 0; w < sizeof(blst_fp12) / sizeof(limb_t); ++w) {
          out[w] |= in[w] & mask;
        }
      }
      blst_fp12_mul(&acc.v_, &acc.v_, &selected);
    }
  }
  crypto::cleanse({exponent.data(), exponent.size()});
  return acc;
}

bool Gt::operator==(const Gt& o) const { return blst_fp12_is_equal(&v_, &o.v_); }

Gt pair(const G1& p, const G2& q) {
  std::pair<G1, G2> term{p, q};
  return multi_pair({&term, 1});
}

Gt multi_pair(std::span<const std::pair<G1, G2>> terms) {
  std::vector<blst_p1_affine> ps;
  std::vector<blst_p2_affine> qs;
  ps.reserve(terms.size());
  qs.reserve(terms.size());
  for (const auto& [p, q] : terms) {
    // e(O, Q) = e(P, O) = 1.
    if (p.is_identity() || q.is_identity()) continue;
    ps.push_back(p.to_affine());
    qs.push_back(q.to_affine());
  }
  Gt out;
  if (ps.empty()) return out;

  std::vector<const blst_p1_affine*> pp;
  std::vector<const blst_p2_affine*> qp;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    pp.push_back(&ps[i]);
    qp.push_back(&qs[i]);
  }
  blst_fp12 miller;
  blst_miller_loop_n(&miller, qp.data(), pp.data(), ps.size());
  blst_final_exp(&out.v_, &miller);
  return out;
}

}  // namespace cpabe::pairing
