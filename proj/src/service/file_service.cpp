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

#include "cpabe/service/file_service.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "cpabe/attestation/http.hpp"
#include "cpabe/common/crypto.hpp"
#include "cpabe/common/file_io.hpp"
#include "cpabe/policy/policy.hpp"

namespace cpabe::service {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr auto kRetryInterval = std::chrono::seconds(2);

std::string new_id() { return to_hex(crypto::random_bytes(16)); }

bool is_id(std::string_view s) {
  return s.size() == 32 && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

std::string clean_filename(std::string name) {
  auto slash = name.find_last_of("/\\");
  if (slash != std::string::npos) name.erase(0, slash + 1);
  std::erase_if(name, [](unsigned char c) { return c < 0x20 || c == 0x7f; });
  return name.empty() ? "upload.bin" : name;
}

std::int64_t to_ms(std::chrono::system_clock::time_point t) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
}

json to_json(const StoredFile& f) {
  return {{"file_id", f.file_id},
          {"filename", f.filename},
          {"size", f.size},
          {"created_ms", to_ms(f.created)},
          {"sequence", f.sequence}};
}

StoredFile from_json(const json& j) {
  StoredFile f;
  f.file_id = j.at("file_id").get<std::string>();
  f.filename = j.at("filename").get<std::string>();
  f.size = j.at("size").get<std::uint64_t>();
  f.created = std::chrono::system_clock::time_point(
      std::chrono::milliseconds(j.at("created_ms").get<std::int64_t>()));
  f.sequence = j.value("sequence", std::uint64_t{0});
  return f;
}

Bytes read_if_exists(const fs::path& p) { return fs::exists(p) ? read_file(p) : Bytes{}; }

std::optional<VerifierLink> derive_link(const ServiceConfig& config,
                                        const enclave::Platform& platform) {
  if (!config.verifier_url.empty()) {
    auto key = from_hex(config.verifier_public_key);
    if (key.size() != 32) {
      fail(Errc::kInvalidArgument, "verifier_public_key must be 64 hex characters");
    }
    VerifierLink link{std::make_shared<attestation::HttpVerifierTransport>(config.verifier_url), {}};
    std::copy(key.begin(), key.end(), link.public_key.begin());
    return link;
  }
  if (config.policy.empty()) return std::nullopt;
  // In-process verifier trusting this machine's quoting key.
  auto seed_path = config.platform_dir() / "verifier.key";
  auto signing = fs::exists(seed_path) ? crypto::Ed25519KeyPair::from_seed(read_file(seed_path))
                                       : crypto::Ed25519KeyPair::generate();
  if (!fs::exists(seed_path)) write_file_atomic(seed_path, signing.seed());
  attestation::VerifierConfig vc;
  vc.expected_measurement = enclave::measure(enclave::EnclaveConfig{}.code_identity,
                                             enclave::EnclaveConfig{}.config_version);
  vc.quoting_public_key = platform.quoting_key.public_key();
  auto verifier = std::make_shared<attestation::Verifier>(vc, signing);
  auto authority = std::make_shared<attestation::PolicyAuthority>(verifier, config.policy);
  return VerifierLink{std::make_shared<attestation::LocalVerifierTransport>(authority),
                      signing.public_key()};
}

}  // namespace

FileService::FileService(ServiceConfig config, std::optional<VerifierLink> link)
    : config_(std::move(config)) {
  for (const auto& d : {config_.platform_dir(), config_.containers_dir(), config_.sealed_dir(),
                        config_.staging_dir()}) {
    fs::create_directories(d);
  }
  platform_ = enclave::load_or_create_platform(config_.device_secret(),
                                               config_.platform_dir() / "quoting.key");
  link_ = link ? std::move(link) : derive_link(config_, *platform_);
  ocall_ = std::make_shared<enclave::MemoryOcallHandler>();
  enclave::EnclaveConfig ec;
  if (link_) ec.verifier_public_key = link_->public_key;
  enclave_ = std::make_unique<enclave::Enclave>(ec, platform_, ocall_);
  client_ = std::make_unique<enclave::EnclaveClient>(*enclave_);
}

FileService::~FileService() = default;

attestation::PublicKey FileService::quoting_public_key() const {
  return platform_->quoting_key.public_key();
}

void FileService::start() {
  // Staged plaintext does not survive a restart; its tokens are gone.
  for (const auto& entry : fs::directory_iterator(config_.staging_dir())) {
    fs::remove_all(entry.path());
  }
  load_index();

  auto pub_path = config_.sealed_dir() / "pub.seal";
  auto master_path = config_.sealed_dir() / "master.seal";
  auto policy_path = config_.sealed_dir() / "policy.seal";
  bool have_pub = fs::exists(pub_path);
  bool have_master = fs::exists(master_path);
  if (have_pub != have_master) {
    fail(Errc::kIoError, "sealed key pair incomplete in " + config_.sealed_dir().string());
  }
  if (have_pub) {
    auto loaded = client_->load_keys(
        {read_file(pub_path), read_file(master_path), read_if_exists(policy_path)});
    if (!loaded.policy_text.empty()) install_policy(loaded.policy_text);
  } else {
    auto s = client_->setup();
    write_file_atomic(pub_path, s.sealed_public);
    write_file_atomic(master_path, s.sealed_master);
  }
  if (!ready()) provision();
}

bool FileService::ready() const {
  std::lock_guard lock(mu_);
  return !policy_text_.empty();
}

void FileService::install_policy(std::string text) {
  auto vocab = policy::parse_policy(text).vocabulary();
  std::lock_guard lock(mu_);
  policy_text_ = std::move(text);
  vocabulary_ = std::move(vocab);
}

bool FileService::provision() {
  std::lock_guard guard(provision_mu_);
  {
    std::lock_guard lock(mu_);
    last_attempt_ = std::chrono::steady_clock::now();
  }
  if (!link_) return ready();
  try {
    auto challenge = link_->transport->request_challenge();
    auto quote = client_->get_quote(challenge);
    auto response = link_->transport->submit_quote(challenge, quote);
    auto result = client_->provision_policy(response);
    write_file_atomic(config_.sealed_dir() / "policy.seal", result.sealed_policy);
    install_policy(result.policy_text);
  } catch (const Error& e) {
    std::cerr << "provisioning failed: " << e.what() << "\n";
  }
  return ready();
}

void FileService::load_index() {
  std::lock_guard lock(mu_);
  files_.clear();
  for (const auto& entry : fs::directory_iterator(config_.containers_dir())) {
    if (entry.path().extension() != ".json") continue;
    try {
      auto f = from_json(json::parse(to_string(read_file(entry.path()))));
      if (!is_id(f.file_id) || !fs::exists(config_.containers_dir() / (f.file_id + ".cpsx"))) {
        continue;
      }
      next_sequence_ = std::max(next_sequence_, f.sequence + 1);
      files_.emplace(f.file_id, std::move(f));
    } catch (const std::exception& e) {
      std::cerr << "skipping metadata " << entry.path() << ": " << e.what() << "\n";
    }
  }
}

void FileService::sweep_tokens() {
  auto now = std::chrono::steady_clock::now();
  std::lock_guard lock(mu_);
  for (auto it = tokens_.begin(); it != tokens_.end();) {
    auto& t = it->second;
    if (!t.used && now >= t.expires) {
      std::error_code ec;
      fs::remove(config_.staging_dir() / it->first, ec);
      t.used = true;
    }
    if (now >= t.expires + config_.token_ttl) {
      it = tokens_.erase(it);
    } else {
      ++it;
    }
  }
}

void FileService::audit(std::string_view event, std::string_view file_id,
                        std::string_view detail) {
  json line = {{"time_ms", to_ms(std::chrono::system_clock::now())},
               {"event", event},
               {"file_id", file_id},
               {"detail", detail}};
  std::lock_guard lock(audit_mu_);
  std::ofstream out(config_.storage_dir / "audit.log", std::ios::app);
  out << line.dump() << "\n";
}

StoredFile FileService::encrypt(std::string filename, Bytes content) {
  sweep_tokens();
  if (!ready()) {
    bool retry;
    {
      std::lock_guard lock(mu_);
      retry = std::chrono::steady_clock::now() - last_attempt_ >= kRetryInterval;
    }
    if (!retry || !provision()) {
      throw ServiceError(503, "NotReady: enclave is not attested and provisioned");
    }
  }
  if (content.empty()) throw ServiceError(400, "empty upload");
  if (content.size() > config_.max_upload_bytes) throw ServiceError(413, "upload too large");

  StoredFile f;
  f.file_id = new_id();
  f.filename = clean_filename(std::move(filename));
  f.size = content.size();
  auto in_id = "plain/" + f.file_id;
  auto out_id = "container/" + f.file_id;
  ocall_->put(in_id, std::move(content));
  try {
    client_->encrypt(in_id, out_id);
  } catch (const Error& e) {
    if (auto p = ocall_->take(in_id)) crypto::cleanse(*p);
    ocall_->erase(out_id);
    if (e.code() == Errc::kNoKeys || e.code() == Errc::kNoPolicy) {
      throw ServiceError(503, std::string("NotReady: ") + e.what());
    }
    throw ServiceError(500, e.what());
  }
  if (auto p = ocall_->take(in_id)) crypto::cleanse(*p);
  auto container = ocall_->take(out_id);
  if (!container) throw ServiceError(500, "enclave produced no container");

  write_file_atomic(config_.containers_dir() / (f.file_id + ".cpsx"), *container);
  {
    std::lock_guard lock(mu_);
    f.created = std::chrono::system_clock::now();
    f.sequence = next_sequence_++;
  }
  write_file_atomic(config_.containers_dir() / (f.file_id + ".json"),
                    as_bytes(to_json(f).dump()));
  std::lock_guard lock(mu_);
  files_.emplace(f.file_id, f);
  return f;
}

std::string FileService::decrypt(std::string_view file_id,
                                 const std::vector<std::string>& attributes) {
  sweep_tokens();
  StoredFile file;
  {
    std::lock_guard lock(mu_);
    auto it = is_id(file_id) ? files_.find(std::string(file_id)) : files_.end();
    if (it == files_.end()) throw ServiceError(404, "unknown file");
    file = it->second;
  }
  policy::AttributeSet attrs;
  try {
    attrs = policy::make_attribute_set(attributes);
  } catch (const Error& e) {
    throw ServiceError(400, e.what());
  }
  if (attrs.empty()) throw ServiceError(400, "no attributes selected");

  Bytes container;
  try {
    container = read_file(config_.containers_dir() / (file.file_id + ".cpsx"));
  } catch (const Error& e) {
    audit("container_unreadable", file.file_id, e.what());
    throw ServiceError(500, "stored container unreadable");
  }

  auto token = new_id();
  auto in_id = "ciphertext/" + token;
  auto out_id = "plaintext/" + token;
  ocall_->put(in_id, std::move(container));
  try {
    client_->decrypt(attrs, in_id, out_id);
  } catch (const Error& e) {
    ocall_->erase(in_id);
    ocall_->erase(out_id);
    switch (e.code()) {
      case Errc::kSatisfactionFailure:
        audit("access_denied", file.file_id, enclave::join_attributes(attrs));
        throw ServiceError(403, "access denied");
      case Errc::kAuthenticationFailure:
      case Errc::kMalformedContainer:
        audit("container_corrupt", file.file_id, e.what());
        throw ServiceError(500, "stored container is corrupt");
      case Errc::kNoKeys:
        throw ServiceError(503, std::string("NotReady: ") + e.what());
      default:
        audit("decrypt_error", file.file_id, e.what());
        throw ServiceError(500, e.what());
    }
  }
  ocall_->erase(in_id);
  auto plaintext = ocall_->take(out_id);
  if (!plaintext) throw ServiceError(500, "enclave produced no plaintext");
  try {
    write_file_atomic(config_.staging_dir() / token, *plaintext);
  } catch (const Error& e) {
    crypto::cleanse(*plaintext);
    throw ServiceError(500, e.what());
  }
  crypto::cleanse(*plaintext);
  std::lock_guard lock(mu_);
  tokens_.emplace(token, Token{file.file_id, file.filename,
                               std::chrono::steady_clock::now() + config_.token_ttl, false});
  return token;
}

Download FileService::download(std::string_view token) {
  sweep_tokens();
  Download d;
  {
    std::lock_guard lock(mu_);
    auto it = is_id(token) ? tokens_.find(std::string(token)) : tokens_.end();
    if (it == tokens_.end()) throw ServiceError(404, "unknown token");
    if (it->second.used) throw ServiceError(410, "token already used or expired");
    it->second.used = true;
    d.filename = it->second.filename;
  }
  auto path = config_.staging_dir() / std::string(token);
  try {
    d.content = read_file(path);
  } catch (const Error& e) {
    throw ServiceError(500, e.what());
  }
  std::error_code ec;
  fs::remove(path, ec);
  return d;
}

std::vector<StoredFile> FileService::files() const {
  std::vector<StoredFile> out;
  {
    std::lock_guard lock(mu_);
    for (const auto& [id, f] : files_) out.push_back(f);
  }
  std::sort(out.begin(), out.end(), [](const StoredFile& a, const StoredFile& b) {
    return std::tie(a.created, a.sequence) > std::tie(b.created, b.sequence);
  });
  return out;
}

std::vector<std::string> FileService::attributes() const {
  std::lock_guard lock(mu_);
  return vocabulary_;
}

std::string FileService::policy_text() const {
  std::lock_guard lock(mu_);
  return policy_text_;
}

}  // namespace cpabe::service
