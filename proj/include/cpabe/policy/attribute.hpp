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

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cpabe::policy {

/// A normalized attribute token such as `department:cs`.
///
/// Normalization lowercases ASCII letters and then requires the token to be
/// non-empty and drawn from `[a-z0-9_\-:.]`. Gate tokens (`3of3`) and the
/// `and` / `or` keywords are reserved and never valid attributes.
class Attribute {
 public:
  /// Throws Error(kBadToken) when `raw` does not normalize.
  explicit Attribute(std::string_view raw);

  const std::string& str() const { return token_; }

  friend bool operator==(const Attribute&, const Attribute&) = default;
  friend auto operator<=>(const Attribute&, const Attribute&) = default;

 private:
  std::string token_;
};

/// Normalized form of `raw`, or Error(kBadToken).
std::string normalize_attribute(std::string_view raw);

/// True for tokens of the form `<k>of<n>` (digits only, case-insensitive).
bool is_gate_token(std::string_view token);

using AttributeSet = std::set<Attribute>;

/// Builds a set from raw tokens; duplicates collapse.
AttributeSet make_attribute_set(const std::vector<std::string>& raw);

/// Splits on commas and whitespace, then normalizes each token.
AttributeSet parse_attribute_list(std::string_view text);

}  // namespace cpabe::policy
