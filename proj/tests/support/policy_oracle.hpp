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
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cpabe/policy/policy.hpp"

namespace cpabe::test_support {

// Reference evaluator used as an oracle: recounts satisfied children with no
// shared code path with policy::satisfies().
inline bool oracle_satisfied(const policy::PolicyNode& node, const std::set<std::string>& attrs) {
  if (node.is_leaf()) return attrs.count(node.attribute().str()) > 0;
  std::size_t count = 0;
  for (const auto& child : node.children()) count += oracle_satisfied(child, attrs) ? 1 : 0;
  return count >= node.threshold();
}

inline std::vector<std::string> universe(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("attr" + std::to_string(i));
  return out;
}

// Random threshold tree with at most `max_leaves` leaves and `max_depth` gate
// levels, drawing leaves (with repetition) from `names`.
class RandomPolicyGenerator {
 public:
  RandomPolicyGenerator(std::uint64_t seed, std::vector<std::string> names)
      : rng_(seed), names_(std::move(names)) {}

  policy::PolicyTree next(std::size_t max_leaves, std::size_t max_depth) {
    std::size_t budget = std::uniform_int_distribution<std::size_t>(1, max_leaves)(rng_);
    auto root = build(budget, max_depth);
    return policy::PolicyTree(std::move(root));
  }

  std::set<std::string> random_subset() {
    std::set<std::string> out;
    for (const auto& n : names_) {
      if (std::bernoulli_distribution(0.5)(rng_)) out.insert(n);
    }
    return out;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  policy::PolicyNode build(std::size_t leaves, std::size_t depth) {
    if (leaves == 1 && (depth == 0 || std::bernoulli_distribution(0.5)(rng_))) {
      return leaf();
    }
    if (depth == 0) return leaf();
    std::size_t max_children = std::min<std::size_t>(leaves, 4);
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_children)(rng_);
    // Split the leaf budget across n children, each getting at least one.
    std::vector<std::size_t> split(n, 1);
    for (std::size_t rest = leaves - n; rest > 0; --rest) {
      split[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_)]++;
    }
    std::vector<policy::PolicyNode> children;
    for (auto s : split) children.push_back(build(s, depth - 1));
    auto k = std::uniform_int_distribution<std::uint32_t>(1, static_cast<std::uint32_t>(n))(rng_);
    return policy::PolicyNode::gate(k, std::move(children));
  }

  policy::PolicyNode leaf() {
    auto i = std::uniform_int_distribution<std::size_t>(0, names_.size() - 1)(rng_);
    return policy::PolicyNode::leaf(policy::Attribute(names_[i]));
  }

  std::mt19937_64 rng_;
  std::vector<std::string> names_;
};

inline policy::AttributeSet to_attribute_set(const std::set<std::string>& names) {
  policy::AttributeSet out;
  for (const auto& n : names) out.emplace(n);
  return out;
}

}  // namespace cpabe::test_support
