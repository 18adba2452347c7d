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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpabe/policy/attribute.hpp"

namespace cpabe::policy {

struct PolicyLimits {
  std::size_t max_depth = 32;
  std::size_t max_leaves = 1024;
};

/// Node of a threshold access tree: either an attribute leaf or a k-of-n gate.
class PolicyNode {
 public:
  static PolicyNode leaf(Attribute attr);
  /// Requires 1 <= threshold <= children.size(); throws Error(kArityError).
  static PolicyNode gate(std::uint32_t threshold, std::vector<PolicyNode> children);

  bool is_leaf() const { return children_.empty(); }
  /// Leaf only.
  const Attribute& attribute() const;
  /// Gate only.
  std::uint32_t threshold() const { return threshold_; }
  const std::vector<PolicyNode>& children() const { return children_; }

  std::size_t leaf_count() const;
  /// A leaf has depth 0; a gate is one deeper than its deepest child.
  std::size_t depth() const;

  friend bool operator==(const PolicyNode&, const PolicyNode&) = default;

 private:
  PolicyNode() = default;

  std::optional<Attribute> attr_;
  std::uint32_t threshold_ = 0;
  std::vector<PolicyNode> children_;
};

/// An immutable, validated policy with its canonical postfix text.
class PolicyTree {
 public:
  /// Validates `root` against `limits`.
  explicit PolicyTree(PolicyNode root, const PolicyLimits& limits = {});

  const PolicyNode& root() const { return root_; }
  /// Canonical postfix form; identical to format_policy(*this).
  const std::string& text() const { return text_; }
  std::size_t leaf_count() const { return root_.leaf_count(); }

  /// Leaf attributes in left-to-right order, duplicates included.
  std::vector<Attribute> leaves() const;
  /// Distinct leaf attributes, sorted.
  std::vector<std::string> vocabulary() const;

  friend bool operator==(const PolicyTree& a, const PolicyTree& b) { return a.root_ == b.root_; }

 private:
  PolicyNode root_;
  std::string text_;
};

/// Parses the postfix policy language.
///
/// Tokens are separated by whitespace. An attribute token pushes a leaf; a
/// gate `KofN` pops N operands and pushes a K-of-N gate over them in their
/// original order; `and` is `2of2` and `or` is `1of2`. Exactly one operand
/// must remain at the end.
PolicyTree parse_policy(std::string_view text, const PolicyLimits& limits = {});

/// Canonical postfix text: single spaces, normalized attributes, all gates
/// spelled `KofN`.
std::string format_policy(const PolicyTree& tree);
std::string format_policy(const PolicyNode& node);

}  // namespace cpabe::policy
