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
#include <vector>

#include "cpabe/common/bytes.hpp"

namespace cpabe::enclave {

// Request:  opcode (1) | fields
// Response: status (1) | fields
// Each field is a 4-byte big-endian length followed by that many bytes.
//
// Fields per opcode, request -> response:
//   Setup            ()                                         -> (sealed pub, sealed master, public params)
//   ProvisionPolicy  (provisioning response)                    -> (sealed policy, policy text)
//   Encrypt          (input id, output id, sealed pub?, sealed policy?)      -> (output id, container digest)
//   Decrypt          (attributes, input id, output id, sealed pub?, sealed master?) -> (output id)
//   Keygen           (attributes, sealed pub?, sealed master?)  -> (user key)
//   GetQuote         (nonce)                                    -> (quote)
//   LoadKeys         (sealed pub, sealed master, sealed policy?) -> (public params, policy text)
// A `?` field may be empty, meaning "use the keys held by the enclave".
// Attributes are comma-separated. Error responses carry one field: a message.
enum class Opcode : std::uint8_t {
  kSetup = 0x01,
  kProvisionPolicy = 0x02,
  kEncrypt = 0x03,
  kDecrypt = 0x04,
  kKeygen = 0x05,
  kGetQuote = 0x06,
  kLoadKeys = 0x07,
};

enum class Status : std::uint8_t {
  kOk = 0,
  kUnknownOpcode = 1,
  kMalformedFrame = 2,
  kNoKeys = 3,
  kNoPolicy = 4,
  kAlreadySetUp = 5,
  kNotAttested = 6,
  kAccessDenied = 7,
  kAuthenticationFailure = 8,
  kOcallFailure = 9,
  kSealError = 10,
  kBadPolicy = 11,
  kProvisioningFailure = 12,
  kMalformedContainer = 13,
  kInvalidArgument = 14,
  kInternal = 15,
};

std::string_view status_name(Status s);
Status status_from_errc(Errc code);
Errc errc_from_status(Status s);

struct EcallRequest {
  Opcode opcode;
  std::vector<Bytes> fields;

  Bytes encode() const;
  /// Throws Error(kUnknownOpcode) or Error(kMalformedFrame).
  static EcallRequest decode(ByteView frame);
};

struct EcallResponse {
  Status status = Status::kOk;
  std::vector<Bytes> fields;

  bool ok() const { return status == Status::kOk; }
  Bytes encode() const;
  /// Throws Error(kMalformedFrame).
  static EcallResponse decode(ByteView frame);
};

}  // namespace cpabe::enclave
