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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cpabe/policy/attribute.hpp"
#include "cpabe/policy/policy.hpp"

namespace cpabe::bench {

enum class Experiment { kRules, kAttributes, kFileSize };
enum class Phase { kEncrypt, kDecrypt };
enum class EnclaveMode { kOn, kOff, kBoth };

std::string_view experiment_name(Experiment e);
/// Accepts "rules", "attributes"/"attrs", "filesize"/"file-size".
Experiment parse_experiment(std::string_view name);
std::string_view phase_name(Phase p);

struct BenchConfig {
  Experiment experiment = Experiment::kRules;
  /// Rules, attributes per rule, or megabytes (2^20 bytes), by experiment.
  std::vector<std::uint64_t> sweep;
  std::size_t attrs_per_rule = 5;
  std::size_t rules = 10;
  std::size_t file_bytes = 500 * 1024;
  int repetitions = 5;
  EnclaveMode enclave = EnclaveMode::kBoth;
  /// CSV destination; empty writes nothing.
  std::filesystem::path output;

  /// Sweep and fixed parameters used for the named experiment when the
  /// caller gives no sweep.
  static BenchConfig defaults(Experiment e);
  /// Throws Error(kInvalidArgument).
  void validate() const;
};

struct BenchRecord {
  Experiment experiment;
  std::uint64_t param;
  Phase phase;
  bool enclave;
  double median_ms;
  double mean_ms;
  double min_ms;
  int reps;
  /// Median of the key-encapsulation share of each run: kem_encrypt for
  /// encryption, keygen plus decapsulation for decryption. Measured on the
  /// direct path only; zero for enclave records.
  double kem_median_ms = 0;
  std::size_t leaf_count = 0;
};

/// Top-level 1-of-`rules` gate over AND rules of `attrs_per_rule` leaves
/// named r{i}:a{j}. A one-attribute rule is the bare leaf.
policy::PolicyTree generate_policy(std::size_t rules, std::size_t attrs_per_rule);

/// The attributes that satisfy rule `rule` and nothing else.
policy::AttributeSet rule_attributes(std::size_t rule, std::size_t attrs_per_rule);

/// Runs the sweep. For every value: one warm-up per path, then repetitions
/// alternating enclave-on and enclave-off runs. Writes config.output if set.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

inline constexpr std::string_view kCsvHeader =
    "experiment,param,phase,enclave,median_ms,mean_ms,min_ms,reps";

std::string to_csv(const std::vector<BenchRecord>& records);
/// Throws Error(kIoError).
void write_csv(const std::filesystem::path& path, const std::vector<BenchRecord>& records);

}  // namespace cpabe::bench
