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

#include "cpabe/service/file_service.hpp"

namespace cpabe::service {

/// JSON/HTTP front end over a FileService.
///
///   POST /encrypt-sgx        multipart field "file"  -> {file_id, filename, size}
///   POST /decrypt-sgx        {file_id, attributes}   -> {download_token}
///   GET  /files                                      -> [{file_id, filename, size, created}]
///   GET  /download/{token}                           -> file bytes
///   GET  /attributes                                 -> {attributes: [...]}
///   GET  /health                                     -> {ready, policy}
///
/// Errors answer {"error": message} with the ServiceError status.
class HttpServer {
 public:
  explicit HttpServer(FileService& service);
  ~HttpServer();

  /// Port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  void serve();
  int start(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cpabe::service
