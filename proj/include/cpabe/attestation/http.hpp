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

#include <memory>
#include <string>

#include "cpabe/attestation/transport.hpp"

namespace cpabe::attestation {

/// Serves /attest/challenge and /attest/quote for one PolicyAuthority.
class VerifierHttpServer {
 public:
  explicit VerifierHttpServer(std::shared_ptr<PolicyAuthority> authority);
  ~VerifierHttpServer();

  /// Binds; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void serve();
  /// bind() then serve() on a background thread.
  int start(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class HttpVerifierTransport : public VerifierTransport {
 public:
  /// `base_url` like "http://127.0.0.1:9000".
  explicit HttpVerifierTransport(std::string base_url);

  AttestationChallenge request_challenge() override;
  ProvisioningResponse submit_quote(const AttestationChallenge& challenge,
                                    const Quote& quote) override;

 private:
  std::string base_url_;
};

}  // namespace cpabe::attestation
