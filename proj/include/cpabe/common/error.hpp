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

#include <stdexcept>
#include <string>
#include <string_view>

namespace cpabe {

enum class Errc {
  // policy
  kEmptyPolicy,
  kArityError,
  kBadToken,
  kLimitExceeded,
  // abe core
  kUnsupportedSecurityLevel,
  kEmptyAttributeSet,
  kSatisfactionFailure,
  kMalformedCiphertext,
  kAuthenticationFailure,
  kMalformedContainer,
  kMalformedKey,
  // enclave
  kSealError,
  kUnknownOpcode,
  kMalformedFrame,
  kNoKeys,
  kNoPolicy,
  kAlreadySetUp,
  kNotAttested,
  kOcallFailure,
  kBadPolicy,
  kProvisioningFailure,
  // attestation
  kBadSignature,
  kWrongMeasurement,
  kStaleNonce,
  kReplayedNonce,
  kNonceMismatch,
  kMalformedQuote,
  // generic
  kInvalidArgument,
  kIoError,
  kCryptoFailure,
  kInternal,
};

std::string_view errc_name(Errc code) noexcept;

/// Error raised by every component of the toolkit. The code is stable and is
/// what crosses the enclave boundary; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace cpabe
