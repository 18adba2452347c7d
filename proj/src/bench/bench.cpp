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

#include "cpabe/bench/bench.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <limits>
#include <malloc.h>
#include <sstream>

#include "cpabe/abe/container.hpp"
#include "cpabe/attestation/transport.hpp"
#include "cpabe/bench/stats.hpp"
#include "cpabe/common/crypto.hpp"
#include "cpabe/enclave/client.hpp"

namespace cpabe::bench {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// An enclave plus an in-process verifier that provisions whatever policy the
// current sweep value needs.
class EnclavePath {
 public:
  EnclavePath()
      : platform_(std::make_shared<enclave::Platform>(enclave::Platform{
            enclave::generate_device_secret(), attestation::QuotingKey::generate()})),
        verifier_key_(crypto::Ed25519KeyPair::generate()),
        ocall_(std::make_shared<enclave::MemoryOcallHandler>()),
        enclave_(enclave::EnclaveConfig{"cpabe-enclave", 1, verifier_key_.public_key()}, platform_,
                 ocall_),
        client_(enclave_) {
    auto s = client_.setup();
    sealed_.public_params = std::move(s.sealed_public);
    sealed_.master_key = std::move(s.sealed_master);
  }

  Bytes provision(const std::string& policy_text) {
    attestation::VerifierConfig vc;
    vc.expected_measurement = enclave_.measurement();
    vc.quoting_public_key = platform_->quoting_key.public_key();
    attestation::PolicyAuthority authority(
        std::make_shared<attestation::Verifier>(vc, verifier_key_), policy_text);
    auto challenge = authority.challenge();
    auto quote = client_.get_quote(challenge);
    return client_.provision_policy(authority.attest(challenge, quote)).sealed_policy;
  }

  // Inputs are staged in host memory before the clock starts, as the direct
  // path also starts from buffers it already holds.
  void stage(const std::string& id, Bytes data) { ocall_->put(id, std::move(data)); }

  Bytes encrypt(const std::string& in, const Bytes& sealed_policy) {
    client_.encrypt(in, "warm-up", {sealed_.public_params, {}, sealed_policy});
    return *ocall_->take("warm-up");
  }

  double time_encrypt(const std::string& in, const std::string& out, const Bytes& sealed_policy) {
    auto start = Clock::now();
    client_.encrypt(in, out, {sealed_.public_params, {}, sealed_policy});
    auto result = ocall_->take(out);
    return ms_since(start);
  }

  double time_decrypt(const policy::AttributeSet& attrs, const std::string& in,
                      const std::string& out) {
    auto start = Clock::now();
    client_.decrypt(attrs, in, out, {sealed_.public_params, sealed_.master_key, {}});
    auto result = ocall_->take(out);
    return ms_since(start);
  }

 private:
  std::shared_ptr<enclave::Platform> platform_;
  crypto::Ed25519KeyPair verifier_key_;
  std::shared_ptr<enclave::MemoryOcallHandler> ocall_;
  enclave::Enclave enclave_;
  enclave::EnclaveClient client_;
  enclave::SealedKeys sealed_;  // policy unused; each fixture has its own
};

struct Timing {
  double total_ms;
  double kem_ms;
};

// abe_core called directly, mirroring the work the enclave does per request.
class DirectPath {
 public:
  DirectPath() {
    auto [pp, mk] = abe::setup(128);
    pp_.emplace(std::move(pp));
    mk_.emplace(std::move(mk));
  }

  Bytes encrypt(const policy::PolicyTree& policy, const Bytes& plaintext) {
    return abe::encrypt_file(*pp_, policy, plaintext).encode();
  }

  Timing time_encrypt(const policy::PolicyTree& policy, const Bytes& plaintext) {
    auto start = Clock::now();
    auto kem = abe::kem_encrypt(*pp_, policy);
    double kem_ms = ms_since(start);
    auto bytes = abe::seal_container(policy, std::move(kem), plaintext).encode();
    return {ms_since(start), kem_ms};
  }

  // Keygen happens at decryption time, as inside the enclave.
  Timing time_decrypt(const policy::AttributeSet& attrs, const Bytes& container_bytes) {
    auto start = Clock::now();
    auto uk = abe::keygen(*mk_, *pp_, attrs);
    double kem_ms = ms_since(start);
    // Container parsing copies the body, so it counts toward the DEM share.
    auto container = abe::CiphertextContainer::decode(container_bytes);
    auto kem_start = Clock::now();
    auto kem = abe::KemCiphertext::decode_body(policy::parse_policy(container.policy_text),
                                               container.kem_body);
    auto secret = abe::kem_decrypt(*pp_, uk, kem);
    kem_ms += ms_since(kem_start);
    auto plaintext = abe::dem_decrypt(secret, container.nonce, container.body, container.header());
    return {ms_since(start), kem_ms};
  }

 private:
  std::optional<abe::PublicParams> pp_;
  std::optional<abe::MasterKey> mk_;
};

struct Shape {
  std::size_t rules;
  std::size_t attrs;
  std::size_t bytes;
};

Shape shape_for(const BenchConfig& c, std::uint64_t value) {
  switch (c.experiment) {
    case Experiment::kRules: return {static_cast<std::size_t>(value), c.attrs_per_rule, c.file_bytes};
    case Experiment::kAttributes: return {c.rules, static_cast<std::size_t>(value), c.file_bytes};
    case Experiment::kFileSize:
      return {c.rules, c.attrs_per_rule, static_cast<std::size_t>(value) << 20};
  }
  fail(Errc::kInvalidArgument, "unknown experiment");
}

BenchRecord make_record(const BenchConfig& c, std::uint64_t value, Phase phase, bool enclave,
                        const std::vector<double>& totals, const std::vector<double>& kems,
                        std::size_t leaves) {
  auto s = summarize(totals);
  BenchRecord r{c.experiment, value, phase, enclave, s.median, s.mean, s.min, c.repetitions};
  if (!kems.empty()) r.kem_median_ms = summarize(kems).median;
  r.leaf_count = leaves;
  return r;
}

}  // namespace

std::string_view experiment_name(Experiment e) {
  switch (e) {
    case Experiment::kRules: return "rules";
    case Experiment::kAttributes: return "attributes";
    case Experiment::kFileSize: return "filesize";
  }
  return "unknown";
}

Experiment parse_experiment(std::string_view name) {
  if (name == "rules") return Experiment::kRules;
  if (name == "attributes" || name == "attrs") return Experiment::kAttributes;
  if (name == "filesize" || name == "file-size") return Experiment::kFileSize;
  fail(Errc::kInvalidArgument, "unknown experiment: " + std::string(name));
}

std::string_view phase_name(Phase p) { return p == Phase::kEncrypt ? "encrypt" : "decrypt"; }

BenchConfig BenchConfig::defaults(Experiment e) {
  BenchConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::kRules: c.sweep = {1, 5, 10, 15, 20}; break;
    case Experiment::kAttributes: c.sweep = {2, 4, 6, 8, 10}; break;
    case Experiment::kFileSize: c.sweep = {1, 10, 25, 50}; break;
  }
  return c;
}

void BenchConfig::validate() const {
  if (sweep.empty()) fail(Errc::kInvalidArgument, "sweep must not be empty");
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    if (sweep[i] == 0) fail(Errc::kInvalidArgument, "sweep values must be positive");
    if (i > 0 && sweep[i] <= sweep[i - 1]) {
      fail(Errc::kInvalidArgument, "sweep must be strictly increasing");
    }
  }
  if (repetitions < 3) fail(Errc::kInvalidArgument, "repetitions must be at least 3");
  if (rules == 0 || attrs_per_rule == 0) {
    fail(Errc::kInvalidArgument, "rules and attributes per rule must be positive");
  }
  if (file_bytes == 0 && experiment != Experiment::kFileSize) {
    fail(Errc::kInvalidArgument, "file size must be positive");
  }
}

policy::PolicyTree generate_policy(std::size_t rules, std::size_t attrs_per_rule) {
  if (rules == 0 || attrs_per_rule == 0) {
    fail(Errc::kInvalidArgument, "rules and attributes per rule must be positive");
  }
  policy::PolicyLimits limits;
  if (rules * attrs_per_rule > limits.max_leaves) {
    fail(Errc::kLimitExceeded, "generated policy exceeds the leaf limit");
  }
  std::vector<policy::PolicyNode> rule_nodes;
  rule_nodes.reserve(rules);
  for (std::size_t i = 0; i < rules; ++i) {
    // Built in index order; the attribute set would put a10 before a2.
    std::vector<policy::PolicyNode> ordered;
    for (std::size_t j = 0; j < attrs_per_rule; ++j) {
      ordered.push_back(policy::PolicyNode::leaf(
          policy::Attribute("r" + std::to_string(i) + ":a" + std::to_string(j))));
    }
    rule_nodes.push_back(attrs_per_rule == 1
                             ? std::move(ordered.front())
                             : policy::PolicyNode::gate(static_cast<std::uint32_t>(attrs_per_rule),
                                                        std::move(ordered)));
  }
  return policy::PolicyTree(policy::PolicyNode::gate(1, std::move(rule_nodes)), limits);
}

policy::AttributeSet rule_attributes(std::size_t rule, std::size_t attrs_per_rule) {
  policy::AttributeSet out;
  for (std::size_t j = 0; j < attrs_per_rule; ++j) {
    out.emplace("r" + std::to_string(rule) + ":a" + std::to_string(j));
  }
  return out;
}

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  config.validate();
  // glibc maps blocks above a dynamic threshold (at most 32 MiB) straight from
  // the kernel and unmaps them on free, so only the largest payloads would pay
  // fresh page faults on every run. Serve everything from the heap and keep
  // freed pages.
  mallopt(M_MMAP_MAX, 0);
  mallopt(M_TRIM_THRESHOLD, std::numeric_limits<int>::max());
  bool on = config.enclave != EnclaveMode::kOff;
  bool off = config.enclave != EnclaveMode::kOn;

  std::optional<EnclavePath> enclave_path;
  std::optional<DirectPath> direct_path;
  if (on) enclave_path.emplace();
  if (off) direct_path.emplace();

  struct Fixture {
    std::uint64_t value;
    policy::PolicyTree policy;
    policy::AttributeSet key_attrs;
    Bytes plaintext;
    std::string id;
    Bytes sealed_policy;
    Bytes direct_ct;
    std::vector<double> enc_on, enc_off, enc_kem, dec_on, dec_off, dec_kem;
  };
  std::vector<Fixture> fixtures;
  for (auto value : config.sweep) {
    auto shape = shape_for(config, value);
    fixtures.push_back({value, generate_policy(shape.rules, shape.attrs),
                        rule_attributes(shape.rules - 1, shape.attrs),
                        crypto::random_bytes(shape.bytes), std::to_string(value), {}, {},
                        {}, {}, {}, {}, {}, {}});
  }

  // Setup outside the timed region; doubles as the warm-up.
  for (auto& f : fixtures) {
    if (on) {
      f.sealed_policy = enclave_path->provision(f.policy.text());
      enclave_path->stage("in-" + f.id, f.plaintext);
      enclave_path->stage("ct-" + f.id, enclave_path->encrypt("in-" + f.id, f.sealed_policy));
      enclave_path->time_decrypt(f.key_attrs, "ct-" + f.id, "dec-" + f.id);
    }
    if (off) {
      f.direct_ct = direct_path->encrypt(f.policy, f.plaintext);
      direct_path->time_decrypt(f.key_attrs, f.direct_ct);
    }
  }

  // Every repetition visits every sweep value, and each phase runs its two
  // paths back to back in alternating order, so drift in machine speed lands
  // on all cells alike.
  for (int rep = 0; rep < config.repetitions; ++rep) {
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
      auto& f = fixtures[rep % 2 == 0 ? i : fixtures.size() - 1 - i];
      bool on_first = (rep + i) % 2 == 0;
      for (auto phase : {Phase::kEncrypt, Phase::kDecrypt}) {
        for (int turn = 0; turn < 2; ++turn) {
          bool run_on = (turn == 0) == on_first;
          if (run_on && on) {
            if (phase == Phase::kEncrypt) {
              f.enc_on.push_back(
                  enclave_path->time_encrypt("in-" + f.id, "out-" + f.id, f.sealed_policy));
            } else {
              f.dec_on.push_back(enclave_path->time_decrypt(f.key_attrs, "ct-" + f.id, "dec-" + f.id));
            }
          } else if (!run_on && off) {
            auto t = phase == Phase::kEncrypt ? direct_path->time_encrypt(f.policy, f.plaintext)
                                              : direct_path->time_decrypt(f.key_attrs, f.direct_ct);
            (phase == Phase::kEncrypt ? f.enc_off : f.dec_off).push_back(t.total_ms);
            (phase == Phase::kEncrypt ? f.enc_kem : f.dec_kem).push_back(t.kem_ms);
          }
        }
      }
    }
  }

  std::vector<BenchRecord> records;
  for (const auto& f : fixtures) {
    auto leaves = f.policy.leaf_count();
    if (on) records.push_back(make_record(config, f.value, Phase::kEncrypt, true, f.enc_on, {}, leaves));
    if (off) {
      records.push_back(
          make_record(config, f.value, Phase::kEncrypt, false, f.enc_off, f.enc_kem, leaves));
    }
    if (on) records.push_back(make_record(config, f.value, Phase::kDecrypt, true, f.dec_on, {}, leaves));
    if (off) {
      records.push_back(
          make_record(config, f.value, Phase::kDecrypt, false, f.dec_off, f.dec_kem, leaves));
    }
  }
  if (!config.output.empty()) write_csv(config.output, records);
  return records;
}

std::string to_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << kCsvHeader << "\n" << std::fixed << std::setprecision(3);
  for (const auto& r : records) {
    out << experiment_name(r.experiment) << ',' << r.param << ',' << phase_name(r.phase) << ','
        << (r.enclave ? "on" : "off") << ',' << r.median_ms << ',' << r.mean_ms << ',' << r.min_ms
        << ',' << r.reps << "\n";
  }
  return out.str();
}

void write_csv(const std::filesystem::path& path, const std::vector<BenchRecord>& records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(Errc::kIoError, "cannot write " + path.string());
  out << to_csv(records);
  out.flush();
  if (!out) fail(Errc::kIoError, "write failed: " + path.string());
}

}  // namespace cpabe::bench
