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

#include "cpabe/policy/policy.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "cpabe/common/error.hpp"

namespace cpabe::policy {
namespace {

struct GateSpec {
  std::uint32_t k;
  std::uint32_t n;
};

std::uint32_t parse_count(std::string_view digits, std::string_view token) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || v > 0xFFFFFFFFull) {
    fail(Errc::kBadToken, "gate count out of range in '" + std::string(token) + "'");
  }
  return static_cast<std::uint32_t>(v);
}

std::optional<GateSpec> gate_spec(std::string_view token) {
  std::string lower(token);
  for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "and") return GateSpec{2, 2};
  if (lower == "or") return GateSpec{1, 2};
  if (!is_gate_token(lower)) return std::nullopt;
  auto pos = lower.find("of");
  return GateSpec{parse_count(std::string_view(lower).substr(0, pos), token),
                  parse_count(std::string_view(lower).substr(pos + 2), token)};
}

void format_into(const PolicyNode& node, std::string& out) {
  if (node.is_leaf()) {
    out += node.attribute().str();
    return;
  }
  for (const auto& child : node.children()) {
    format_into(child, out);
    out.push_back(' ');
  }
  out += std::to_string(node.threshold()) + "of" + std::to_string(node.children().size());
}

void collect_leaves(const PolicyNode& node, std::vector<Attribute>& out) {
  if (node.is_leaf()) {
    out.push_back(node.attribute());
    return;
  }
  for (const auto& child : node.children()) collect_leaves(child, out);
}

}  // namespace

PolicyNode PolicyNode::leaf(Attribute attr) {
  PolicyNode n;
  n.attr_ = std::move(attr);
  return n;
}

PolicyNode PolicyNode::gate(std::uint32_t threshold, std::vector<PolicyNode> children) {
  if (children.empty()) fail(Errc::kArityError, "gate without children");
  if (threshold < 1 || threshold > children.size()) {
    fail(Errc::kArityError, "threshold " + std::to_string(threshold) + " outside [1, " +
                                std::to_string(children.size()) + "]");
  }
  PolicyNode n;
  n.threshold_ = threshold;
  n.children_ = std::move(children);
  return n;
}

const Attribute& PolicyNode::attribute() const {
  if (!attr_) fail(Errc::kInternal, "attribute() on a gate node");
  return *attr_;
}

std::size_t PolicyNode::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : children_) n += c.leaf_count();
  return n;
}

std::size_t PolicyNode::depth() const {
  std::size_t d = 0;
  for (const auto& c : children_) d = std::max(d, c.depth() + 1);
  return d;
}

PolicyTree::PolicyTree(PolicyNode root, const PolicyLimits& limits) : root_(std::move(root)) {
  if (root_.depth() > limits.max_depth) {
    fail(Errc::kLimitExceeded, "policy depth exceeds " + std::to_string(limits.max_depth));
  }
  if (root_.leaf_count() > limits.max_leaves) {
    fail(Errc::kLimitExceeded,
         "policy leaf count exceeds " + std::to_string(limits.max_leaves));
  }
  text_ = format_policy(root_);
}

std::vector<Attribute> PolicyTree::leaves() const {
  std::vector<Attribute> out;
  collect_leaves(root_, out);
  return out;
}

std::vector<std::string> PolicyTree::vocabulary() const {
  std::set<std::string> distinct;
  for (const auto& a : leaves()) distinct.insert(a.str());
  return {distinct.begin(), distinct.end()};
}

PolicyTree parse_policy(std::string_view text, const PolicyLimits& limits) {
  struct Operand {
    PolicyNode node;
    std::size_t depth;
  };
  std::vector<Operand> stack;
  std::size_t leaves = 0;
  bool any_token = false;

  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) break;
    auto token = text.substr(start, i - start);
    any_token = true;

    if (auto gate = gate_spec(token)) {
      if (gate->n == 0 || gate->k == 0 || gate->k > gate->n) {
        fail(Errc::kArityError, "invalid gate '" + std::string(token) + "'");
      }
      if (gate->n > stack.size()) {
        fail(Errc::kArityError, "gate '" + std::string(token) + "' needs " +
                                    std::to_string(gate->n) + " operands, stack has " +
                                    std::to_string(stack.size()));
      }
      std::vector<PolicyNode> children;
      children.reserve(gate->n);
      std::size_t depth = 0;
      auto first = stack.end() - gate->n;
      for (auto it = first; it != stack.end(); ++it) {
        depth = std::max(depth, it->depth + 1);
        children.push_back(std::move(it->node));
      }
      stack.erase(first, stack.end());
      if (depth > limits.max_depth) {
        fail(Errc::kLimitExceeded, "policy depth exceeds " + std::to_string(limits.max_depth));
      }
      stack.push_back({PolicyNode::gate(gate->k, std::move(children)), depth});
    } else {
      if (++leaves > limits.max_leaves) {
        fail(Errc::kLimitExceeded,
             "policy leaf count exceeds " + std::to_string(limits.max_leaves));
      }
      stack.push_back({PolicyNode::leaf(Attribute(token)), 0});
    }
  }

  if (!any_token) fail(Errc::kEmptyPolicy, "policy text is empty");
  if (stack.size() != 1) {
    fail(Errc::kArityError,
         std::to_string(stack.size()) + " operands left on the stack, expected 1");
  }
  return PolicyTree(std::move(stack.front().node), limits);
}

std::string format_policy(const PolicyTree& tree) { return tree.text(); }

std::string format_policy(const PolicyNode& node) {
  std::string out;
  format_into(node, out);
  return out;
}

}  // namespace cpabe::policy
