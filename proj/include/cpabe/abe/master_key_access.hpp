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

#include "cpabe/abe/abe.hpp"

namespace cpabe::abe {

// Serialization of the master secret. Included by the enclave's sealing path
// and by tests that scan transcripts for leaked key bytes; nothing else.
struct MasterKeyAccess {
  static Bytes encode(const MasterKey& mk);
  /// Throws Error(kMalformedKey).
  static MasterKey decode(ByteView bytes);
};

}  // namespace cpabe::abe
