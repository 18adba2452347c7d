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

// Fixture for the architecture check: a service source that evaluates a
// policy itself. The check must reject this directory.
#include "cpabe/policy/satisfaction.hpp"

bool allowed(const cpabe::policy::PolicyTree& p, const cpabe::policy::AttributeSet& a) {
  return cpabe::policy::satisfies(p, a).satisfied;
}
