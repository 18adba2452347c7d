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
#include <filesystem>

#include "cpabe/common/bytes.hpp"
#include "cpabe/enclave/measurement.hpp"

namespace cpabe::enclave {

/// Stand-in for a fused hardware secret.
using DeviceSecret = std::array<std::uint8_t, 32>;

DeviceSecret generate_device_secret();
/// Throws Error(kIoError) if unreadable, Error(kInvalidArgument) unless the
/// file holds exactly 32 bytes.
DeviceSecret load_device_secret(const std::filesystem::path& path);
DeviceSecret load_or_create_device_secret(const std::filesystem::path& path);

/// Wire form: "SEAL" | measurement (32) | nonce (12) | AES-256-GCM ciphertext
/// and tag. The associated data is the 48-byte header.
struct SealedBlob {
  static constexpr std::size_t kHeaderSize = 4 + 32 + 12;

  Measurement measurement{};
  std::array<std::uint8_t, 12> nonce{};
  Bytes ciphertext;

  Bytes header() const;
  Bytes encode() const;
  /// Throws Error(kSealError).
  static SealedBlob decode(ByteView bytes);
};

/// Sealing key = HKDF-SHA256(device secret, measurement).
SealedBlob seal(const DeviceSecret& device, const Measurement& measurement, ByteView data);

/// Throws Error(kSealError) when the blob names another measurement, was
/// sealed under another device secret, or was modified.
Bytes unseal(const DeviceSecret& device, const Measurement& measurement, const SealedBlob& blob);
Bytes unseal(const DeviceSecret& device, const Measurement& measurement, ByteView encoded);

}  // namespace cpabe::enclave
