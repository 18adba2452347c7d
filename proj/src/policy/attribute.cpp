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

#include "cpabe/policy/attribute.hpp"

#include <cctype>

#include "cpabe/common/error.hpp"

namespace cpabe::policy {
namespace {

bool allowed(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-' ||
         c == ':' || c == '.';
}

std::string lowercase(std::string_view raw) {
  std::string out(raw);
  for (auto& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace

bool is_gate_token(std::string_view token) {
  auto lower = lowercase(token);
  auto pos = lower.find("of");
  if (pos == std::string::npos || pos == 0 || pos + 2 == lower.size()) return false;
  auto digits = [](std::string_view s) {
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  return digits(std::string_view(lower).substr(0, pos)) &&
         digits(std::string_view(lower).substr(pos + 2));
}

std::string normalize_attribute(std::string_view raw) {
  if (raw.empty()) fail(Errc::kBadToken, "empty attribute");
  auto token = lowercase(raw);
  for (char c : token) {
    if (!allowed(c)) fail(Errc::kBadToken, "invalid character in attribute '" + token + "'");
  }
  if (token == "and" || token == "or" || is_gate_token(token)) {
    fail(Errc::kBadToken, "'" + token + "' is a reserved policy keyword");
  }
  return token;
}

Attribute::Attribute(std::string_view raw) : token_(normalize_attribute(raw)) {}

AttributeSet make_attribute_set(const std::vector<std::string>& raw) {
  AttributeSet out;
  for (const auto& r : raw) out.emplace(r);
  return out;
}

AttributeSet parse_attribute_list(std::string_view text) {
  AttributeSet out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) out.emplace(current);
    current.clear();
  };
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      current.push_back(c);
    }
  }
  flush();
  return out;
}

}  // namespace cpabe::policy
