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

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "cpabe/common/bytes.hpp"

namespace cpabe::enclave {

/// Untrusted callbacks the enclave uses to move bulk data. Any exception
/// thrown from a callback surfaces as status OcallFailure.
class OcallHandler {
 public:
  virtual ~OcallHandler() = default;
  virtual Bytes read_input(std::string_view resource_id) = 0;
  virtual void write_output(std::string_view resource_id, ByteView data) = 0;
};

/// Named in-memory buffers. Thread-safe.
class MemoryOcallHandler : public OcallHandler {
 public:
  Bytes read_input(std::string_view resource_id) override;
  void write_output(std::string_view resource_id, ByteView data) override;

  void put(std::string_view resource_id, Bytes data);
  /// Removes and returns the buffer, if present.
  std::optional<Bytes> take(std::string_view resource_id);
  bool contains(std::string_view resource_id) const;
  void erase(std::string_view resource_id);

 private:
  mutable std::mutex mu_;
  std::map<std::string, Bytes, std::less<>> buffers_;
};

}  // namespace cpabe::enclave
