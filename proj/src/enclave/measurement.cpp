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

#include "cpabe/enclave/measurement.hpp"

#include "cpabe/common/crypto.hpp"

namespace cpabe::enclave {

Measurement measure(std::string_view code_identity, std::uint32_t config_version) {
  ByteWriter w;
  w.raw(as_bytes("cpabe-enclave/measurement/v1"));
  w.field(code_identity);
  w.u32(config_version);
  return crypto::sha256(w.view());
}

}  // namespace cpabe::enclave
