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

#include "cpabe/enclave/ocall.hpp"

namespace cpabe::enclave {

Bytes MemoryOcallHandler::read_input(std::string_view resource_id) {
  std::lock_guard lock(mu_);
  auto it = buffers_.find(resource_id);
  if (it == buffers_.end()) fail(Errc::kIoError, "no such resource: " + std::string(resource_id));
  return it->second;
}

void MemoryOcallHandler::write_output(std::string_view resource_id, ByteView data) {
  put(resource_id, Bytes(data.begin(), data.end()));
}

void MemoryOcallHandler::put(std::string_view resource_id, Bytes data) {
  std::lock_guard lock(mu_);
  buffers_.insert_or_assign(std::string(resource_id), std::move(data));
}

std::optional<Bytes> MemoryOcallHandler::take(std::string_view resource_id) {
  std::lock_guard lock(mu_);
  auto it = buffers_.find(resource_id);
  if (it == buffers_.end()) return std::nullopt;
  auto out = std::move(it->second);
  buffers_.erase(it);
  return out;
}

bool MemoryOcallHandler::contains(std::string_view resource_id) const {
  std::lock_guard lock(mu_);
  return buffers_.find(resource_id) != buffers_.end();
}

void MemoryOcallHandler::erase(std::string_view resource_id) {
  std::lock_guard lock(mu_);
  if (auto it = buffers_.find(resource_id); it != buffers_.end()) buffers_.erase(it);
}

}  // namespace cpabe::enclave
