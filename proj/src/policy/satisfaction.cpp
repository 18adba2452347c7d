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

#include "cpabe/policy/satisfaction.hpp"

namespace cpabe::policy {
namespace {

NodeSatisfaction evaluate(const PolicyNode& node, const AttributeSet& attrs) {
  NodeSatisfaction out;
  if (node.is_leaf()) {
    out.satisfied = attrs.contains(node.attribute());
    return out;
  }
  const auto& children = node.children();
  out.children.reserve(children.size());
  for (const auto& child : children) out.children.push_back(evaluate(child, attrs));

  // Lowest-index tie-break keeps selections reproducible.
  for (std::size_t i = 0; i < children.size() && out.selected.size() < node.threshold(); ++i) {
    if (out.children[i].satisfied) out.selected.push_back(i);
  }
  out.satisfied = out.selected.size() == node.threshold();
  if (!out.satisfied) out.selected.clear();
  return out;
}

}  // namespace

SatisfactionResult satisfies(const PolicyTree& tree, const AttributeSet& attrs) {
  SatisfactionResult result;
  result.root = evaluate(tree.root(), attrs);
  result.satisfied = result.root.satisfied;
  return result;
}

}  // namespace cpabe::policy
