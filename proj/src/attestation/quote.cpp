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

#include "cpabe/attestation/quote.hpp"

#include <algorithm>

#include "cpabe/common/file_io.hpp"

namespace cpabe::attestation {
namespace {

constexpr std::string_view kQuoteLabel = "cpabe-enclave/quote/v1";

template <std::size_t N>
std::array<std::uint8_t, N> to_array(ByteView b) {
  std::array<std::uint8_t, N> out{};
  std::copy_n(b.begin(), N, out.begin());
  return out;
}

}  // namespace

Bytes AttestationChallenge::encode() const {
  ByteWriter w;
  w.raw(nonce);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(issued_at.time_since_epoch());
  w.u64(static_cast<std::uint64_t>(ms.count()));
  return w.take();
}

AttestationChallenge AttestationChallenge::decode(ByteView bytes) {
  ByteReader r(bytes, Errc::kMalformedQuote);
  AttestationChallenge c;
  c.nonce = to_array<16>(r.raw(16));
  c.issued_at = std::chrono::system_clock::time_point(
      std::chrono::milliseconds(static_cast<std::int64_t>(r.u64())));
  r.expect_done();
  return c;
}

ReportData make_report_data(const PublicKey& ephemeral_public, const Nonce& nonce) {
  ReportData rd{};
  std::copy(ephemeral_public.begin(), ephemeral_public.end(), rd.begin());
  std::copy(nonce.begin(), nonce.end(), rd.begin() + 32);
  return rd;
}

PublicKey Quote::ephemeral_public_key() const { return to_array<32>(report_data); }

Nonce Quote::nonce() const { return to_array<16>(ByteView(report_data).subspan(32)); }

Bytes Quote::signed_payload() const {
  ByteWriter w;
  w.raw(as_bytes(kQuoteLabel));
  w.raw(measurement);
  w.raw(report_data);
  return w.take();
}

crypto::Digest Quote::digest() const { return crypto::sha256(encode()); }

Bytes Quote::encode() const {
  ByteWriter w;
  w.raw(measurement);
  w.raw(report_data);
  w.raw(signature);
  return w.take();
}

Quote Quote::decode(ByteView bytes) {
  if (bytes.size() != kSize) fail(Errc::kMalformedQuote, "quote must be 160 bytes");
  ByteReader r(bytes, Errc::kMalformedQuote);
  Quote q;
  q.measurement = to_array<32>(r.raw(32));
  q.report_data = to_array<64>(r.raw(64));
  q.signature = to_array<64>(r.raw(64));
  return q;
}

QuotingKey QuotingKey::generate() { return QuotingKey(crypto::Ed25519KeyPair::generate()); }

QuotingKey QuotingKey::load(const std::filesystem::path& path) {
  auto seed = read_file(path);
  if (seed.size() != 32) fail(Errc::kInvalidArgument, "quoting key file must hold 32 bytes");
  QuotingKey key(crypto::Ed25519KeyPair::from_seed(seed));
  crypto::cleanse(seed);
  return key;
}

QuotingKey QuotingKey::load_or_create(const std::filesystem::path& path) {
  if (std::filesystem::exists(path)) return load(path);
  auto key = generate();
  key.save(path);
  return key;
}

void QuotingKey::save(const std::filesystem::path& path) const {
  write_file_atomic(path, key_.seed());
  std::filesystem::permissions(path, std::filesystem::perms::owner_read |
                                         std::filesystem::perms::owner_write);
}

Quote QuotingKey::sign(const Measurement& measurement, const ReportData& report_data) const {
  Quote q;
  q.measurement = measurement;
  q.report_data = report_data;
  q.signature = key_.sign(q.signed_payload());
  return q;
}

bool verify_quote_signature(const Quote& quote, const PublicKey& quoting_public_key) {
  return crypto::ed25519_verify(quoting_public_key, quote.signed_payload(), quote.signature);
}

}  // namespace cpabe::attestation
