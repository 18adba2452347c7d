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

// Acceptance suite: one PASS/FAIL line per top-level criterion, exit status 1
// if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cpabe/abe/container.hpp"
#include "cpabe/abe/master_key_access.hpp"
#include "cpabe/bench/bench.hpp"
#include "cpabe/bench/stats.hpp"
#include "cpabe/enclave/sealing.hpp"
#include "support/enclave_rig.hpp"
#include "support/policy_oracle.hpp"

namespace cpabe {
namespace {

using bench::BenchRecord;
using bench::Experiment;
using bench::Phase;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---- correctness ---------------------------------------------------------

Outcome correctness_iff_satisfiable() {
  constexpr int kTrials = 1000;
  auto start = Clock::now();
  auto [pp, mk] = abe::setup();
  auto names = test_support::universe(8);
  test_support::RandomPolicyGenerator gen(20261016, names);
  int disagreements = 0, satisfied = 0, max_leaves = 0, max_depth = 0;
  for (int t = 0; t < kTrials; ++t) {
    auto policy = gen.next(16, 3);
    max_leaves = std::max<int>(max_leaves, static_cast<int>(policy.leaf_count()));
    max_depth = std::max<int>(max_depth, static_cast<int>(policy.root().depth()));
    auto subset = gen.random_subset();
    if (subset.empty()) subset.insert(names[static_cast<std::size_t>(t) % names.size()]);
    bool expected = test_support::oracle_satisfied(policy.root(), subset);
    satisfied += expected;

    auto plaintext = crypto::random_bytes(64 + static_cast<std::size_t>(t % 7) * 100);
    auto bytes = abe::encrypt_file(pp, policy, plaintext).encode();
    auto uk = abe::keygen(mk, pp, test_support::to_attribute_set(subset));
    bool got = false;
    try {
      got = abe::decrypt_file(pp, uk, abe::CiphertextContainer::decode(bytes)) == plaintext;
      if (!got) ++disagreements;  // decrypted to the wrong bytes
    } catch (const Error& e) {
      if (e.code() != Errc::kSatisfactionFailure) ++disagreements;
    }
    if (got != expected) ++disagreements;
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream d;
  d << kTrials << " trials, " << disagreements << " disagreements, " << satisfied
    << " satisfiable, max leaves " << max_leaves << ", max depth " << max_depth << ", "
    << fmt("%.1f", secs) << " s";
  bool pass = disagreements == 0 && secs < 300 && max_leaves <= 16 && max_depth <= 3 &&
              satisfied > 0 && satisfied < kTrials;
  return {pass, d.str()};
}

// ---- benchmark trends ----------------------------------------------------

struct Series {
  std::vector<double> x, median, kem;
};

Series series(const std::vector<BenchRecord>& rs, Phase phase, bool enclave) {
  Series s;
  for (const auto& r : rs) {
    if (r.phase != phase || r.enclave != enclave) continue;
    s.x.push_back(static_cast<double>(r.param));
    s.median.push_back(r.median_ms);
    s.kem.push_back(r.kem_median_ms);
  }
  return s;
}

bool non_decreasing(const std::vector<double>& v) {
  return std::is_sorted(v.begin(), v.end());
}

bool strictly_increasing(const std::vector<double>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (double x : v) out += (out.empty() ? "" : "/") + fmt("%.1f", x);
  return out;
}

std::vector<BenchRecord> run(Experiment e, int reps) {
  auto c = bench::BenchConfig::defaults(e);
  c.repetitions = reps;
  return bench::run_bench(c);
}

Outcome rules_trend(const std::vector<BenchRecord>& rs) {
  std::ostringstream d;
  bool pass = true;
  for (bool on : {true, false}) {
    auto enc = series(rs, Phase::kEncrypt, on);
    bool mono = non_decreasing(enc.median);
    pass &= mono;
    d << "encrypt " << (on ? "on" : "off") << " " << join(enc.median) << " ms"
      << (mono ? "" : " (not monotone)") << "; ";
  }
  // Leaf count is rules x 5, so the fit against leaves equals the fit
  // against the rule count up to scale.
  std::vector<double> leaves;
  for (const auto& r : rs) {
    if (r.phase == Phase::kEncrypt && !r.enclave) leaves.push_back(static_cast<double>(r.leaf_count));
  }
  auto fit = bench::fit_line(leaves, series(rs, Phase::kEncrypt, false).kem);
  pass &= fit.r_squared >= 0.9;
  d << "KEM vs leaves R^2 " << fmt("%.4f", fit.r_squared);
  return {pass, d.str()};
}

Outcome attributes_trend(const std::vector<BenchRecord>& rs) {
  std::ostringstream d;
  bool pass = true;
  for (auto phase : {Phase::kEncrypt, Phase::kDecrypt}) {
    for (bool on : {true, false}) {
      auto s = series(rs, phase, on);
      bool mono = non_decreasing(s.median);
      pass &= mono;
      d << bench::phase_name(phase) << " " << (on ? "on" : "off") << " " << join(s.median)
        << (mono ? "" : " (not monotone)") << "; ";
    }
    auto s = series(rs, phase, false);
    auto fit = bench::fit_line(s.x, s.kem);
    pass &= fit.r_squared >= 0.9;
    d << bench::phase_name(phase) << " KEM R^2 " << fmt("%.4f", fit.r_squared) << "; ";
  }
  return {pass, d.str()};
}

Outcome filesize_trend(const std::vector<BenchRecord>& rs) {
  std::ostringstream d;
  bool pass = true;
  for (auto phase : {Phase::kEncrypt, Phase::kDecrypt}) {
    for (bool on : {true, false}) {
      auto s = series(rs, phase, on);
      std::vector<double> bytes;
      for (double mb : s.x) bytes.push_back(mb * 1048576.0);
      auto fit = bench::fit_line(bytes, s.median);
      pass &= fit.r_squared >= 0.95;
      if (phase == Phase::kEncrypt) pass &= strictly_increasing(s.median);
      d << bench::phase_name(phase) << " " << (on ? "on" : "off") << " R^2 "
        << fmt("%.4f", fit.r_squared) << "; ";
    }
    auto kem = series(rs, phase, false).kem;
    auto [lo, hi] = std::minmax_element(kem.begin(), kem.end());
    double spread = (*hi - *lo) / *lo;
    pass &= spread < 0.10;
    d << bench::phase_name(phase) << " KEM spread " << fmt("%.1f", spread * 100) << "%; ";
  }
  return {pass, d.str()};
}

Outcome enclave_overhead(const std::vector<std::vector<BenchRecord>>& runs) {
  int pairs = 0, below = 0, over = 0, min_below = 0;
  double worst = 0;
  std::string worst_at;
  for (const auto& rs : runs) {
    std::map<std::pair<std::uint64_t, Phase>, std::pair<double, double>> matched, mins;
    for (const auto& r : rs) {
      auto& m = matched[{r.param, r.phase}];
      (r.enclave ? m.first : m.second) = r.median_ms;
      auto& n = mins[{r.param, r.phase}];
      (r.enclave ? n.first : n.second) = r.min_ms;
    }
    for (const auto& [key, n] : mins) min_below += n.first < n.second;
    for (const auto& [key, m] : matched) {
      ++pairs;
      double ratio = m.first / m.second;
      if (m.first < m.second) ++below;
      if (ratio > 2.0) ++over;
      if (ratio > worst) {
        worst = ratio;
        worst_at = std::string(bench::experiment_name(rs.front().experiment)) + "=" +
                   std::to_string(key.first) + " " + std::string(bench::phase_name(key.second));
      }
    }
  }
  std::ostringstream d;
  d << pairs << " pairs, " << below << " with on < off, " << over << " with ratio > 2, max ratio "
    << fmt("%.3f", worst) << " at " << worst_at << " (minima: " << min_below
    << " with on < off)";
  return {below == 0 && over == 0, d.str()};
}

// ---- sealing ---------------------------------------------------------------

Outcome sealing() {
  std::mt19937_64 rng(256);
  auto device = enclave::generate_device_secret();
  auto m = enclave::measure("cpabe-enclave", 1);
  auto data = crypto::random_bytes(512);
  auto blob = enclave::seal(device, m, data).encode();

  int rejected = 0;
  std::uniform_int_distribution<std::size_t> bit(0, blob.size() * 8 - 1);
  for (int i = 0; i < 256; ++i) {
    auto mutated = blob;
    auto b = bit(rng);
    mutated[b / 8] ^= static_cast<std::uint8_t>(1u << (b % 8));
    try {
      enclave::unseal(device, m, mutated);
    } catch (const Error& e) {
      rejected += e.code() == Errc::kSealError;
    }
  }

  int cross_rejected = 0;
  for (int i = 0; i < 50; ++i) {
    auto identity = "enclave-" + std::to_string(rng());
    auto sealer = enclave::measure(identity, 1);
    auto other = i % 2 == 0 ? enclave::measure(identity, 2)
                            : enclave::measure("other-" + std::to_string(rng()), 1);
    auto sealed = enclave::seal(device, sealer, crypto::random_bytes(64)).encode();
    try {
      enclave::unseal(device, other, sealed);
    } catch (const Error& e) {
      cross_rejected += e.code() == Errc::kSealError;
    }
  }
  bool round_trip = enclave::unseal(device, m, blob) == data;
  std::ostringstream d;
  d << rejected << "/256 bit flips rejected, " << cross_rejected
    << "/50 cross-measurement unseals rejected";
  return {rejected == 256 && cross_rejected == 50 && round_trip, d.str()};
}

// ---- attestation -----------------------------------------------------------

Outcome attestation_protocol() {
  using attestation::Verdict;
  auto platform = test_support::make_platform();
  test_support::VerifierRig vr(*platform);

  // 1. A replayed quote is rejected.
  test_support::EnclaveRig a(platform, vr.key.public_key());
  a.client.setup();
  auto c1 = vr.verifier->issue_challenge();
  auto q1 = a.client.get_quote(c1);
  auto first = vr.verifier->verify_quote(q1, c1);
  auto replay_same = vr.verifier->verify_quote(q1, c1);
  auto replay_new = vr.verifier->verify_quote(q1, vr.verifier->issue_challenge());
  bool replay_ok = first == Verdict::kAccepted && replay_same == Verdict::kReplayedNonce &&
                   replay_new != Verdict::kAccepted;

  // 2. A quote from an enclave with another measurement is rejected.
  test_support::EnclaveRig wrong(platform, vr.key.public_key(), 2);
  wrong.client.setup();
  auto c2 = vr.verifier->issue_challenge();
  auto q2 = wrong.client.get_quote(c2);
  bool measurement_ok = vr.verifier->verify_quote(q2, c2) == Verdict::kWrongMeasurement;

  // 3. A provisioning response meant for one enclave fails in another.
  test_support::EnclaveRig b(platform, vr.key.public_key());
  b.client.setup();
  test_support::EnclaveRig c(platform, vr.key.public_key());
  c.client.setup();
  auto c3 = vr.verifier->issue_challenge();
  auto qb = b.client.get_quote(c3);
  c.client.get_quote(vr.verifier->issue_challenge());  // c has its own pending quote
  bool accepted = vr.verifier->verify_quote(qb, c3) == Verdict::kAccepted;
  auto response = vr.verifier->provision_policy(qb, "a b 2of2");
  Errc replay_code = Errc::kInternal;
  try {
    c.client.provision_policy(response);
  } catch (const Error& e) {
    replay_code = e.code();
  }
  bool intended_ok = b.client.provision_policy(response).policy_text == "a b 2of2";
  bool second_ok = accepted && replay_code == Errc::kProvisioningFailure &&
                   c.enclave->stage() == enclave::EnclaveStage::kKeyed && intended_ok;

  std::ostringstream d;
  d << "replay " << attestation::verdict_name(replay_same) << "/"
    << attestation::verdict_name(replay_new) << ", wrong measurement "
    << (measurement_ok ? "rejected" : "ACCEPTED") << ", cross-enclave response "
    << errc_name(replay_code);
  return {replay_ok && measurement_ok && second_ok, d.str()};
}

// ---- boundary hygiene ------------------------------------------------------

Outcome boundary_hygiene() {
  auto platform = test_support::make_platform();
  test_support::VerifierRig vr(*platform);
  test_support::EnclaveRig rig(platform, vr.key.public_key());
  auto setup = rig.client.setup();
  test_support::attest_and_provision(rig, *vr.verifier, "dept:cs role:prof 2of2 role:admin 1of2");
  auto plaintext = crypto::random_bytes(64 * 1024);
  rig.ocall->put("in", plaintext);
  rig.client.encrypt("in", "ct");
  rig.ocall->put("ct-in", *rig.ocall->take("ct"));
  policy::AttributeSet attrs{policy::Attribute("dept:cs"), policy::Attribute("role:prof")};
  rig.client.decrypt(attrs, "ct-in", "pt");
  bool decrypted = rig.ocall->take("pt") == plaintext;

  auto mk = abe::MasterKeyAccess::encode(abe::MasterKeyAccess::decode(
      enclave::unseal(platform->device_secret, rig.enclave->measurement(), setup.sealed_master)));
  bool whole = rig.transcript.contains(mk);
  auto windows = rig.transcript.leaked_windows(mk);
  std::ostringstream d;
  d << rig.transcript.frames.size() << " frames, " << mk.size() << "-byte master key, "
    << windows << " leaked 16-byte windows";
  return {decrypted && !whole && windows == 0 && rig.transcript.contains(plaintext), d.str()};
}

}  // namespace
}  // namespace cpabe

int main() {
  using namespace cpabe;
  int failures = 0;
  auto report = [&](const char* name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  };

  report("correctness-iff-satisfiability", correctness_iff_satisfiable);

  constexpr int kReps = 25;
  std::vector<std::vector<bench::BenchRecord>> runs;
  for (auto e : {bench::Experiment::kRules, bench::Experiment::kAttributes,
                 bench::Experiment::kFileSize}) {
    try {
      runs.push_back(run(e, kReps));
    } catch (const std::exception& ex) {
      std::cout << "benchmark " << bench::experiment_name(e) << " threw: " << ex.what() << "\n";
      runs.emplace_back();
    }
  }
  report("trend-rules", [&] { return rules_trend(runs[0]); });
  report("trend-attributes", [&] { return attributes_trend(runs[1]); });
  report("trend-filesize", [&] { return filesize_trend(runs[2]); });
  report("enclave-overhead", [&] { return enclave_overhead(runs); });
  report("sealing", sealing);
  report("attestation", attestation_protocol);
  report("boundary-hygiene", boundary_hygiene);

  std::cout << failures << " criteria failed" << std::endl;
  return failures == 0 ? 0 : 1;
}
