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

#include <cstdint>
#include <string_view>

#include "cpabe/attestation/quote.hpp"

namespace cpabe::enclave {

using attestation::Measurement;

/// SHA-256 over a domain label, the length-prefixed code identity and the
/// big-endian config version.
Measurement measure(std::string_view code_identity, std::uint32_t config_version);

}  // namespace cpabe::enclave
