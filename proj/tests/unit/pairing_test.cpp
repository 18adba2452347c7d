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

#include "cpabe/abe/pairing.hpp"
#include "support/errors.hpp"

namespace cpabe::pairing {
namespace {

using test_support::error_of;

TEST(ScalarTest, FieldArithmetic) {
  auto a = Scalar::random();
  auto b = Scalar::random_nonzero();
  EXPECT_EQ(a + b - b, a);
  EXPECT_EQ(a * b * b.inverse(), a);
  EXPECT_EQ(a + (-a), Scalar());
  EXPECT_EQ(Scalar::from_u64(6) * Scalar::from_u64(7), Scalar::from_u64(42));
  EXPECT_EQ(error_of([] { Scalar().inverse(); }), Errc::kInvalidArgument);
}

TEST(ScalarTest, EncodingRoundTripAndRange) {
  for (int i = 0; i < 100; ++i) {
    auto s = Scalar::random();
    auto bytes = s.to_bytes();
    EXPECT_EQ(Scalar::from_bytes(bytes, Errc::kMalformedKey), s);
  }
  std::array<std::uint8_t, 32> too_big;
  too_big.fill(0xFF);
  EXPECT_EQ(error_of([&] { Scalar::from_bytes(too_big, Errc::kMalformedKey); }),
            Errc::kMalformedKey);
}

TEST(PairingTest, Bilinearity) {
  auto g = G1::generator();
  auto h = G2::generator();
  auto base = pair(g, h);
  for (int i = 0; i < 100; ++i) {
    auto a = Scalar::random();
    auto b = Scalar::random();
    ASSERT_EQ(pair(g * a, h * b), base.pow(a * b));
  }
}

TEST(PairingTest, NonDegenerate) {
  EXPECT_FALSE(pair(G1::generator(), G2::generator()).is_identity());
  EXPECT_TRUE(pair(G1(), G2::generator()).is_identity());
}

TEST(PairingTest, MultiPairMatchesProduct) {
  auto a = Scalar::random();
  auto b = Scalar::random();
  auto p1 = G1::generator() * a;
  auto q1 = G2::hash(as_bytes("x"));
  auto p2 = G1::generator() * b;
  auto q2 = G2::generator() * a;
  std::pair<G1, G2> terms[] = {{p1, q1}, {p2, q2}};
  EXPECT_EQ(multi_pair(terms), pair(p1, q1) * pair(p2, q2));
  std::pair<G1, G2> cancel[] = {{p1, q1}, {-p1, q1}};
  EXPECT_TRUE(multi_pair(cancel).is_identity());
}

TEST(GtTest, PowAgreesWithRepeatedMultiplication) {
  auto base = pair(G1::generator() * Scalar::random(), G2::generator());
  Gt acc;
  for (std::uint64_t k = 0; k < 40; ++k) {
    ASSERT_EQ(base.pow(Scalar::from_u64(k)), acc) << k;
    acc = acc * base;
  }
  auto x = Scalar::random();
  EXPECT_EQ(base.pow(x) * base.pow(-x), Gt());
  EXPECT_EQ(base.pow(x).inverse(), base.pow(-x));
}

TEST(SerializationTest, ElementsRoundTripByteExactly) {
  for (int i = 0; i < 50; ++i) {
    auto k = Scalar::random();
    auto p = G1::generator() * k;
    auto q = G2::generator() * k;
    auto t = pair(p, G2::generator());
    auto pb = p.to_bytes();
    auto qb = q.to_bytes();
    auto tb = t.to_bytes();
    EXPECT_EQ(G1::from_bytes(pb, Errc::kMalformedKey).to_bytes(), pb);
    EXPECT_EQ(G2::from_bytes(qb, Errc::kMalformedKey).to_bytes(), qb);
    EXPECT_EQ(Gt::from_bytes(tb, Errc::kMalformedKey).to_bytes(), tb);
  }
}

TEST(SerializationTest, RejectsGarbage) {
  auto p = G1::generator().to_bytes();
  p[10] ^= 0x01;
  // Flipping an x-coordinate bit almost never lands on the curve and subgroup.
  EXPECT_EQ(error_of([&] { G1::from_bytes(p, Errc::kMalformedCiphertext); }),
            Errc::kMalformedCiphertext);
  auto t = pair(G1::generator(), G2::generator()).to_bytes();
  t[100] ^= 0x01;
  EXPECT_EQ(error_of([&] { Gt::from_bytes(t, Errc::kMalformedCiphertext); }),
            Errc::kMalformedCiphertext);
  std::array<std::uint8_t, 576> unreduced;
  unreduced.fill(0xFF);
  EXPECT_EQ(error_of([&] { Gt::from_bytes(unreduced, Errc::kMalformedCiphertext); }),
            Errc::kMalformedCiphertext);
}

TEST(HashToG2Test, DeterministicAndDistinct) {
  EXPECT_EQ(G2::hash(as_bytes("department:cs")), G2::hash(as_bytes("department:cs")));
  EXPECT_FALSE(G2::hash(as_bytes("department:cs")) == G2::hash(as_bytes("department:ee")));
  EXPECT_FALSE(G2::hash(as_bytes("a")).is_identity());
}

}  // namespace
}  // namespace cpabe::pairing
