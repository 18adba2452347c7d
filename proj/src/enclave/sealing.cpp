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

#include "cpabe/enclave/sealing.hpp"

#include <algorithm>

#include "cpabe/common/crypto.hpp"
#include "cpabe/common/file_io.hpp"

namespace cpabe::enclave {
namespace {

constexpr std::string_view kMagic = "SEAL";
constexpr std::string_view kSealSalt = "cpabe-enclave/seal/v1";

Bytes sealing_key(const DeviceSecret& device, const Measurement& measurement) {
  return crypto::hkdf_sha256(device, as_bytes(kSealSalt), measurement, crypto::kAeadKeySize);
}

}  // namespace

DeviceSecret generate_device_secret() {
  DeviceSecret s;
  crypto::random_fill(s);
  return s;
}

DeviceSecret load_device_secret(const std::filesystem::path& path) {
  auto bytes = read_file(path);
  if (bytes.size() != 32) {
    crypto::cleanse(bytes);
    fail(Errc::kInvalidArgument, "device secret file must hold 32 bytes: " + path.string());
  }
  DeviceSecret s;
  std::copy(bytes.begin(), bytes.end(), s.begin());
  crypto::cleanse(bytes);
  return s;
}

DeviceSecret load_or_create_device_secret(const std::filesystem::path& path) {
  if (std::filesystem::exists(path)) return load_device_secret(path);
  auto s = generate_device_secret();
  write_file_atomic(path, s);
  std::filesystem::permissions(path, std::filesystem::perms::owner_read |
                                         std::filesystem::perms::owner_write);
  return s;
}

Bytes SealedBlob::header() const {
  ByteWriter w;
  w.raw(as_bytes(kMagic));
  w.raw(measurement);
  w.raw(nonce);
  return w.take();
}

Bytes SealedBlob::encode() const {
  auto out = header();
  out.insert(out.end(), ciphertext.begin(), ciphertext.end());
  return out;
}

SealedBlob SealedBlob::decode(ByteView bytes) {
  ByteReader r(bytes, Errc::kSealError);
  if (to_string(r.raw(4)) != kMagic) fail(Errc::kSealError, "not a sealed blob");
  SealedBlob b;
  auto m = r.raw(32);
  std::copy(m.begin(), m.end(), b.measurement.begin());
  auto n = r.raw(12);
  std::copy(n.begin(), n.end(), b.nonce.begin());
  if (r.remaining() < crypto::kAeadTagSize) fail(Errc::kSealError, "sealed blob truncated");
  auto ct = r.raw(r.remaining());
  b.ciphertext.assign(ct.begin(), ct.end());
  return b;
}

SealedBlob seal(const DeviceSecret& device, const Measurement& measurement, ByteView data) {
  SealedBlob b;
  b.measurement = measurement;
  crypto::random_fill(b.nonce);
  auto key = sealing_key(device, measurement);
  b.ciphertext = crypto::aead_seal(key, b.nonce, data, b.header());
  crypto::cleanse(key);
  return b;
}

Bytes unseal(const DeviceSecret& device, const Measurement& measurement, const SealedBlob& blob) {
  if (blob.measurement != measurement) {
    fail(Errc::kSealError, "sealed under a different measurement");
  }
  auto key = sealing_key(device, measurement);
  try {
    auto out = crypto::aead_open(key, blob.nonce, blob.ciphertext, blob.header());
    crypto::cleanse(key);
    return out;
  } catch (const Error&) {
    crypto::cleanse(key);
    fail(Errc::kSealError, "sealed blob failed authentication");
  }
}

Bytes unseal(const DeviceSecret& device, const Measurement& measurement, ByteView encoded) {
  return unseal(device, measurement, SealedBlob::decode(encoded));
}

}  // namespace cpabe::enclave
