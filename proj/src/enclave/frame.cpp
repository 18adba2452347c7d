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

#include "cpabe/enclave/frame.hpp"

namespace cpabe::enclave {
namespace {

std::vector<Bytes> read_fields(ByteReader& r) {
  std::vector<Bytes> out;
  while (!r.done()) {
    auto f = r.field();
    out.emplace_back(f.begin(), f.end());
  }
  return out;
}

void write_fields(ByteWriter& w, const std::vector<Bytes>& fields) {
  for (const auto& f : fields) w.field(f);
}

}  // namespace

std::string_view status_name(Status s) {
  switch (s) {
    case Status::kOk: return "OK";
    case Status::kUnknownOpcode: return "UnknownOpcode";
    case Status::kMalformedFrame: return "MalformedFrame";
    case Status::kNoKeys: return "NoKeys";
    case Status::kNoPolicy: return "NoPolicy";
    case Status::kAlreadySetUp: return "AlreadySetUp";
    case Status::kNotAttested: return "NotAttested";
    case Status::kAccessDenied: return "AccessDenied";
    case Status::kAuthenticationFailure: return "AuthenticationFailure";
    case Status::kOcallFailure: return "OcallFailure";
    case Status::kSealError: return "SealError";
    case Status::kBadPolicy: return "BadPolicy";
    case Status::kProvisioningFailure: return "ProvisioningFailure";
    case Status::kMalformedContainer: return "MalformedContainer";
    case Status::kInvalidArgument: return "InvalidArgument";
    case Status::kInternal: return "Internal";
  }
  return "Unknown";
}

Status status_from_errc(Errc code) {
  switch (code) {
    case Errc::kUnknownOpcode: return Status::kUnknownOpcode;
    case Errc::kMalformedFrame: return Status::kMalformedFrame;
    case Errc::kNoKeys: return Status::kNoKeys;
    case Errc::kNoPolicy: return Status::kNoPolicy;
    case Errc::kAlreadySetUp: return Status::kAlreadySetUp;
    case Errc::kNotAttested: return Status::kNotAttested;
    case Errc::kSatisfactionFailure: return Status::kAccessDenied;
    case Errc::kAuthenticationFailure: return Status::kAuthenticationFailure;
    case Errc::kOcallFailure: return Status::kOcallFailure;
    case Errc::kSealError: return Status::kSealError;
    case Errc::kBadPolicy: return Status::kBadPolicy;
    case Errc::kProvisioningFailure: return Status::kProvisioningFailure;
    case Errc::kMalformedContainer:
    case Errc::kMalformedCiphertext: return Status::kMalformedContainer;
    case Errc::kInvalidArgument:
    case Errc::kEmptyAttributeSet:
    case Errc::kBadToken: return Status::kInvalidArgument;
    default: return Status::kInternal;
  }
}

Errc errc_from_status(Status s) {
  switch (s) {
    case Status::kUnknownOpcode: return Errc::kUnknownOpcode;
    case Status::kMalformedFrame: return Errc::kMalformedFrame;
    case Status::kNoKeys: return Errc::kNoKeys;
    case Status::kNoPolicy: return Errc::kNoPolicy;
    case Status::kAlreadySetUp: return Errc::kAlreadySetUp;
    case Status::kNotAttested: return Errc::kNotAttested;
    case Status::kAccessDenied: return Errc::kSatisfactionFailure;
    case Status::kAuthenticationFailure: return Errc::kAuthenticationFailure;
    case Status::kOcallFailure: return Errc::kOcallFailure;
    case Status::kSealError: return Errc::kSealError;
    case Status::kBadPolicy: return Errc::kBadPolicy;
    case Status::kProvisioningFailure: return Errc::kProvisioningFailure;
    case Status::kMalformedContainer: return Errc::kMalformedContainer;
    case Status::kInvalidArgument: return Errc::kInvalidArgument;
    case Status::kOk:
    case Status::kInternal: break;
  }
  return Errc::kInternal;
}

Bytes EcallRequest::encode() const {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(opcode));
  write_fields(w, fields);
  return w.take();
}

EcallRequest EcallRequest::decode(ByteView frame) {
  ByteReader r(frame, Errc::kMalformedFrame);
  auto op = r.u8();
  if (op < static_cast<std::uint8_t>(Opcode::kSetup) ||
      op > static_cast<std::uint8_t>(Opcode::kLoadKeys)) {
    fail(Errc::kUnknownOpcode, "unknown opcode " + std::to_string(op));
  }
  return {static_cast<Opcode>(op), read_fields(r)};
}

Bytes EcallResponse::encode() const {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(status));
  write_fields(w, fields);
  return w.take();
}

EcallResponse EcallResponse::decode(ByteView frame) {
  ByteReader r(frame, Errc::kMalformedFrame);
  auto s = r.u8();
  if (s > static_cast<std::uint8_t>(Status::kInternal)) {
    fail(Errc::kMalformedFrame, "unknown status " + std::to_string(s));
  }
  return {static_cast<Status>(s), read_fields(r)};
}

}  // namespace cpabe::enclave
