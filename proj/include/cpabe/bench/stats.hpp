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

#include <span>

namespace cpabe::bench {

struct Summary {
  double median = 0;
  double mean = 0;
  double min = 0;
};

/// Throws Error(kInvalidArgument) on an empty sample.
Summary summarize(std::span<const double> samples);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};

/// Ordinary least squares y = slope * x + intercept. Needs at least two
/// distinct x values.
LinearFit fit_line(std::span<const double> xs, std::span<const double> ys);

}  // namespace cpabe::bench
