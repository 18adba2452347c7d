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

#ifdef CPABE_SERVICE_MODULE
#error "the service must leave policy evaluation to the enclave"
#endif

#include <cstddef>
#include <vector>

#include "cpabe/policy/attribute.hpp"
#include "cpabe/policy/policy.hpp"

namespace cpabe::policy {

/// Evaluation of one node. For a satisfied gate, `selected` holds exactly
/// `threshold` ascending indices of satisfied children, lowest indices first.
/// `children` mirrors the node's children (empty for leaves).
struct NodeSatisfaction {
  bool satisfied = false;
  std::vector<std::size_t> selected;
  std::vector<NodeSatisfaction> children;
};

struct SatisfactionResult {
  bool satisfied = false;
  NodeSatisfaction root;
};

SatisfactionResult satisfies(const PolicyTree& tree, const AttributeSet& attrs);

}  // namespace cpabe::policy
