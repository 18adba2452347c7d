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

// cpsx: command-line front end for the toolkit.
//
//   cpsx [--data DIR] setup [--no-enclave]
//   cpsx keygen --attrs a,b [-o key.bin] [--no-enclave]
//   cpsx enc --policy "a b 2of2" IN [-o OUT] [--no-enclave]
//   cpsx dec --attrs a,b IN [-o OUT] [--no-enclave]
//   cpsx serve [--config FILE] [--port N] ...
//   cpsx verifier --policy P [--port N]
//   cpsx bench --experiment rules --csv out.csv
//
// Exit status: 0 success, 2 access denied, 1 anything else.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "cpabe/abe/container.hpp"
#include "cpabe/abe/master_key_access.hpp"
#include "cpabe/attestation/http.hpp"
#include "cpabe/attestation/transport.hpp"
#include "cpabe/bench/bench.hpp"
#include "cpabe/common/file_io.hpp"
#include "cpabe/enclave/client.hpp"
#include "cpabe/enclave/enclave.hpp"
#include "cpabe/enclave/measurement.hpp"
#include "cpabe/service/file_service.hpp"
#include "cpabe/service/http_server.hpp"

namespace fs = std::filesystem;
using namespace cpabe;

namespace {

constexpr int kExitDenied = 2;

struct Layout {
  fs::path root;

  fs::path platform() const { return root / "platform"; }
  fs::path device_key() const { return platform() / "device.key"; }
  fs::path quoting_key() const { return platform() / "quoting.key"; }
  fs::path verifier_key() const { return platform() / "verifier.key"; }
  fs::path sealed_pub() const { return root / "sealed" / "pub.seal"; }
  fs::path sealed_master() const { return root / "sealed" / "master.seal"; }
  fs::path plain_pub() const { return root / "keys" / "pub.key"; }
  fs::path plain_master() const { return root / "keys" / "master.key"; }
};

crypto::Ed25519KeyPair load_or_create_verifier_key(const Layout& l) {
  if (fs::exists(l.verifier_key())) {
    return crypto::Ed25519KeyPair::from_seed(read_file(l.verifier_key()));
  }
  auto key = crypto::Ed25519KeyPair::generate();
  write_file_atomic(l.verifier_key(), key.seed());
  fs::permissions(l.verifier_key(), fs::perms::owner_read | fs::perms::owner_write);
  return key;
}

std::shared_ptr<attestation::PolicyAuthority> local_authority(
    const Layout& l, const enclave::Platform& platform, const std::string& policy) {
  attestation::VerifierConfig vc;
  vc.expected_measurement =
      enclave::measure(enclave::EnclaveConfig{}.code_identity, enclave::EnclaveConfig{}.config_version);
  vc.quoting_public_key = platform.quoting_key.public_key();
  auto verifier = std::make_shared<attestation::Verifier>(vc, load_or_create_verifier_key(l));
  return std::make_shared<attestation::PolicyAuthority>(verifier, policy);
}

// One enclave instance per command, exchanging file contents through memory.
struct EnclaveSession {
  explicit EnclaveSession(const Layout& l)
      : layout(l),
        platform(enclave::load_or_create_platform(l.device_key(), l.quoting_key())),
        ocall(std::make_shared<enclave::MemoryOcallHandler>()),
        enclave(enclave::EnclaveConfig{"cpabe-enclave", 1, load_or_create_verifier_key(l).public_key()},
                platform, ocall),
        client(enclave) {}

  enclave::SealedKeys sealed_keys() const {
    if (!fs::exists(layout.sealed_pub()) || !fs::exists(layout.sealed_master())) {
      fail(Errc::kNoKeys, "no sealed keys in " + layout.root.string() + "; run setup first");
    }
    return {read_file(layout.sealed_pub()), read_file(layout.sealed_master()), {}};
  }

  Bytes provision(const std::string& policy) {
    auto authority = local_authority(layout, *platform, policy);
    auto challenge = authority->challenge();
    auto quote = client.get_quote(challenge);
    return client.provision_policy(authority->attest(challenge, quote)).sealed_policy;
  }

  Layout layout;
  std::shared_ptr<enclave::Platform> platform;
  std::shared_ptr<enclave::MemoryOcallHandler> ocall;
  enclave::Enclave enclave;
  enclave::EnclaveClient client;
};

std::pair<abe::PublicParams, abe::MasterKey> load_plain_keys(const Layout& l) {
  if (!fs::exists(l.plain_pub()) || !fs::exists(l.plain_master())) {
    fail(Errc::kNoKeys, "no plain keys in " + l.root.string() + "; run setup --no-enclave first");
  }
  return {abe::PublicParams::decode(read_file(l.plain_pub())),
          abe::MasterKeyAccess::decode(read_file(l.plain_master()))};
}

void write_secret(const fs::path& path, ByteView data) {
  write_file_atomic(path, data);
  fs::permissions(path, fs::perms::owner_read | fs::perms::owner_write);
}

int cmd_setup(const Layout& l, bool no_enclave) {
  if (no_enclave) {
    auto [pp, mk] = abe::setup();
    write_file_atomic(l.plain_pub(), pp.encode());
    auto encoded = abe::MasterKeyAccess::encode(mk);
    write_secret(l.plain_master(), encoded);
    crypto::cleanse(encoded);
    std::cout << "wrote " << l.plain_pub().string() << " and " << l.plain_master().string() << "\n";
    return 0;
  }
  if (fs::exists(l.sealed_pub()) || fs::exists(l.sealed_master())) {
    fail(Errc::kAlreadySetUp, "sealed keys already exist in " + l.root.string());
  }
  EnclaveSession s(l);
  auto r = s.client.setup();
  write_file_atomic(l.sealed_pub(), r.sealed_public);
  write_file_atomic(l.sealed_master(), r.sealed_master);
  std::cout << "measurement " << to_hex(s.enclave.measurement()) << "\n"
            << "wrote " << l.sealed_pub().string() << " and " << l.sealed_master().string()
            << "\n";
  return 0;
}

int cmd_keygen(const Layout& l, const std::string& attrs, const fs::path& out, bool no_enclave) {
  auto set = policy::parse_attribute_list(attrs);
  Bytes key;
  if (no_enclave) {
    auto [pp, mk] = load_plain_keys(l);
    key = abe::keygen(mk, pp, set).encode();
  } else {
    EnclaveSession s(l);
    key = s.client.keygen(set, s.sealed_keys()).encode();
  }
  write_secret(out, key);
  crypto::cleanse(key);
  std::cout << "wrote " << out.string() << "\n";
  return 0;
}

int cmd_enc(const Layout& l, const std::string& policy_text, const fs::path& in, fs::path out,
            bool no_enclave) {
  if (out.empty()) out = fs::path(in.string() + ".cpsx");
  auto plaintext = read_file(in);
  if (no_enclave) {
    auto [pp, mk] = load_plain_keys(l);
    write_file_atomic(out, abe::encrypt_file(pp, policy::parse_policy(policy_text), plaintext).encode());
  } else {
    EnclaveSession s(l);
    s.client.load_keys(s.sealed_keys());
    s.provision(policy_text);
    s.ocall->put("in", std::move(plaintext));
    s.client.encrypt("in", "out");
    write_file_atomic(out, *s.ocall->take("out"));
  }
  crypto::cleanse(plaintext);
  std::cout << "wrote " << out.string() << "\n";
  return 0;
}

int cmd_dec(const Layout& l, const std::string& attrs, const fs::path& key_file,
            const fs::path& in, fs::path out, bool no_enclave) {
  if (out.empty()) {
    out = in.extension() == ".cpsx" ? fs::path(in).replace_extension() : fs::path(in.string() + ".out");
  }
  auto container = read_file(in);
  Bytes plaintext;
  if (no_enclave) {
    auto [pp, mk] = load_plain_keys(l);
    auto uk = key_file.empty() ? abe::keygen(mk, pp, policy::parse_attribute_list(attrs))
                               : abe::UserKey::decode(read_file(key_file));
    plaintext = abe::decrypt_file(pp, uk, abe::CiphertextContainer::decode(container));
  } else {
    if (!key_file.empty()) fail(Errc::kInvalidArgument, "--key requires --no-enclave");
    EnclaveSession s(l);
    s.ocall->put("in", std::move(container));
    s.client.decrypt(policy::parse_attribute_list(attrs), "in", "out", s.sealed_keys());
    plaintext = *s.ocall->take("out");
  }
  write_file_atomic(out, plaintext);
  crypto::cleanse(plaintext);
  std::cout << "wrote " << out.string() << "\n";
  return 0;
}

struct ServeOptions {
  fs::path config;
  std::string host;
  int port = -1;
  std::string policy;
  std::string verifier_url;
  std::string verifier_key;
  fs::path web_root;
};

int cmd_serve(const Layout& l, bool data_given, const ServeOptions& o) {
  auto config = o.config.empty() ? service::ServiceConfig{} : service::ServiceConfig::from_file(o.config);
  config.apply_environment();
  if (data_given || o.config.empty()) config.storage_dir = l.root;
  if (!o.host.empty()) config.host = o.host;
  if (o.port >= 0) config.port = o.port;
  if (!o.policy.empty()) config.policy = o.policy;
  if (!o.verifier_url.empty()) config.verifier_url = o.verifier_url;
  if (!o.verifier_key.empty()) config.verifier_public_key = o.verifier_key;
  if (!o.web_root.empty()) config.web_root = o.web_root;

  service::FileService svc(config);
  svc.start();
  service::HttpServer http(svc);
  int port = http.bind(config.host, config.port);
  std::cout << "listening on http://" << config.host << ":" << port
            << (svc.ready() ? "" : " (no policy provisioned yet)") << std::endl;
  http.serve();
  return 0;
}

int cmd_verifier(const Layout& l, const std::string& host, int port, const std::string& policy) {
  auto platform = enclave::load_or_create_platform(l.device_key(), l.quoting_key());
  auto authority = local_authority(l, *platform, policy);
  attestation::VerifierHttpServer server(authority);
  int bound = server.bind(host, port);
  std::cout << "verifier-public-key " << to_hex(load_or_create_verifier_key(l).public_key()) << "\n"
            << "listening on http://" << host << ":" << bound << std::endl;
  server.serve();
  return 0;
}

struct BenchOptions {
  std::string experiment = "rules";
  fs::path csv;
  int reps = 0;
  std::vector<std::uint64_t> sweep;
  std::size_t attrs = 0;
  std::size_t rules = 0;
  std::string enclave = "both";
};

int cmd_bench(const BenchOptions& o) {
  auto config = bench::BenchConfig::defaults(bench::parse_experiment(o.experiment));
  if (o.reps != 0) config.repetitions = o.reps;
  if (!o.sweep.empty()) config.sweep = o.sweep;
  if (o.attrs != 0) config.attrs_per_rule = o.attrs;
  if (o.rules != 0) config.rules = o.rules;
  config.enclave = o.enclave == "on"    ? bench::EnclaveMode::kOn
                   : o.enclave == "off" ? bench::EnclaveMode::kOff
                                        : bench::EnclaveMode::kBoth;
  config.output = o.csv;
  auto records = bench::run_bench(config);
  if (o.csv.empty()) std::cout << bench::to_csv(records);
  else std::cout << "wrote " << records.size() << " records to " << o.csv.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CP-ABE toolkit with a simulated enclave"};
  app.require_subcommand(1);
  fs::path data = "cpsx-data";
  auto* data_opt = app.add_option("--data", data, "Key and platform directory");

  bool no_enclave = false;
  auto* setup = app.add_subcommand("setup", "Generate and seal the master key pair");
  setup->add_flag("--no-enclave", no_enclave, "Write unsealed keys instead");

  std::string attrs;
  fs::path out;
  auto* keygen = app.add_subcommand("keygen", "Issue a user key");
  keygen->add_option("--attrs", attrs, "Comma-separated attributes")->required();
  keygen->add_option("-o,--out", out, "Key file")->default_val("user.key");
  keygen->add_flag("--no-enclave", no_enclave);

  std::string policy;
  fs::path in;
  auto* enc = app.add_subcommand("enc", "Encrypt a file under a policy");
  enc->add_option("--policy", policy, "Postfix policy, e.g. \"a b 2of2\"")->required();
  enc->add_option("input", in)->required();
  enc->add_option("-o,--out", out, "Output (default INPUT.cpsx)");
  enc->add_flag("--no-enclave", no_enclave);

  fs::path key_file;
  auto* dec = app.add_subcommand("dec", "Decrypt a container");
  auto* attrs_opt = dec->add_option("--attrs", attrs, "Comma-separated attributes");
  auto* key_opt = dec->add_option("--key", key_file, "User key file (with --no-enclave)");
  attrs_opt->excludes(key_opt);
  dec->add_option("input", in)->required();
  dec->add_option("-o,--out", out, "Output (default INPUT without .cpsx)");
  dec->add_flag("--no-enclave", no_enclave);

  ServeOptions serve_opts;
  auto* serve = app.add_subcommand("serve", "Run the HTTP file service");
  serve->add_option("--config", serve_opts.config, "JSON config file");
  serve->add_option("--host", serve_opts.host);
  serve->add_option("--port", serve_opts.port, "0 picks a free port");
  serve->add_option("--policy", serve_opts.policy, "Policy for the in-process verifier");
  serve->add_option("--verifier-url", serve_opts.verifier_url);
  serve->add_option("--verifier-key", serve_opts.verifier_key, "Hex verifier public key");
  serve->add_option("--web-root", serve_opts.web_root);

  std::string verifier_host = "127.0.0.1";
  int verifier_port = 9000;
  auto* verifier = app.add_subcommand("verifier", "Run an attestation verifier over HTTP");
  verifier->add_option("--host", verifier_host);
  verifier->add_option("--port", verifier_port);
  verifier->add_option("--policy", policy, "Policy provisioned to attested enclaves")->required();

  BenchOptions bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "Run a scaling benchmark");
  bench_cmd->add_option("--experiment", bench_opts.experiment)
      ->check(CLI::IsMember({"rules", "attributes", "attrs", "filesize", "file-size"}));
  bench_cmd->add_option("--csv", bench_opts.csv, "CSV output path");
  bench_cmd->add_option("--reps", bench_opts.reps);
  bench_cmd->add_option("--sweep", bench_opts.sweep)->delimiter(',');
  bench_cmd->add_option("--attrs", bench_opts.attrs, "Attributes per rule");
  bench_cmd->add_option("--rules", bench_opts.rules);
  bench_cmd->add_option("--enclave", bench_opts.enclave)->check(CLI::IsMember({"on", "off", "both"}));

  CLI11_PARSE(app, argc, argv);
  Layout layout{data};

  try {
    if (*setup) return cmd_setup(layout, no_enclave);
    if (*keygen) return cmd_keygen(layout, attrs, out, no_enclave);
    if (*enc) return cmd_enc(layout, policy, in, out, no_enclave);
    if (*dec) {
      if (attrs.empty() && key_file.empty()) fail(Errc::kInvalidArgument, "--attrs or --key is required");
      return cmd_dec(layout, attrs, key_file, in, out, no_enclave);
    }
    if (*serve) return cmd_serve(layout, data_opt->count() > 0, serve_opts);
    if (*verifier) return cmd_verifier(layout, verifier_host, verifier_port, policy);
    if (*bench_cmd) return cmd_bench(bench_opts);
  } catch (const Error& e) {
    if (e.code() == Errc::kSatisfactionFailure) {
      std::cerr << "access denied\n";
      return kExitDenied;
    }
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
