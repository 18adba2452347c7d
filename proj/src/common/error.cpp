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

#include "cpabe/common/error.hpp"

namespace cpabe {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kEmptyPolicy: return "EmptyPolicy";
    case Errc::kArityError: return "ArityError";
    case Errc::kBadToken: return "BadToken";
    case Errc::kLimitExceeded: return "LimitExceeded";
    case Errc::kUnsupportedSecurityLevel: return "UnsupportedSecurityLevel";
    case Errc::kEmptyAttributeSet: return "EmptyAttributeSet";
    case Errc::kSatisfactionFailure: return "SatisfactionFailure";
    case Errc::kMalformedCiphertext: return "MalformedCiphertext";
    case Errc::kAuthenticationFailure: return "AuthenticationFailure";
    case Errc::kMalformedContainer: return "MalformedContainer";
    case Errc::kMalformedKey: return "MalformedKey";
    case Errc::kSealError: return "SealError";
    case Errc::kUnknownOpcode: return "UnknownOpcode";
    case Errc::kMalformedFrame: return "MalformedFrame";
    case Errc::kNoKeys: return "StateError(NoKeys)";
    case Errc::kNoPolicy: return "StateError(NoPolicy)";
    case Errc::kAlreadySetUp: return "StateError(AlreadySetUp)";
    case Errc::kNotAttested: return "NotAttested";
    case Errc::kOcallFailure: return "OcallFailure";
    case Errc::kBadPolicy: return "BadPolicy";
    case Errc::kProvisioningFailure: return "ProvisioningFailure";
    case Errc::kBadSignature: return "BadSignature";
    case Errc::kWrongMeasurement: return "WrongMeasurement";
    case Errc::kStaleNonce: return "StaleNonce";
    case Errc::kReplayedNonce: return "ReplayedNonce";
    case Errc::kNonceMismatch: return "NonceMismatch";
    case Errc::kMalformedQuote: return "MalformedQuote";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kIoError: return "IoError";
    case Errc::kCryptoFailure: return "CryptoFailure";
    case Errc::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace cpabe
