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

#include "cpabe/common/crypto.hpp"

#include <openssl/core_names.h>
#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/kdf.h>
#include <openssl/params.h>
#include <openssl/rand.h>

#include <climits>
#include <memory>

namespace cpabe::crypto {
namespace {

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* p) const { EVP_CIPHER_CTX_free(p); }
};
struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* p) const { EVP_MD_CTX_free(p); }
};
struct PkeyDeleter {
  void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
struct PkeyCtxDeleter {
  void operator()(EVP_PKEY_CTX* p) const { EVP_PKEY_CTX_free(p); }
};
struct KdfDeleter {
  void operator()(EVP_KDF* p) const { EVP_KDF_free(p); }
};
struct KdfCtxDeleter {
  void operator()(EVP_KDF_CTX* p) const { EVP_KDF_CTX_free(p); }
};

using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;
using MdCtx = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;
using Pkey = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using PkeyCtx = std::unique_ptr<EVP_PKEY_CTX, PkeyCtxDeleter>;

void check(int ok, const char* what) {
  if (ok != 1) fail(Errc::kCryptoFailure, what);
}

int as_int(std::size_t n) {
  if (n > static_cast<std::size_t>(INT_MAX)) {
    fail(Errc::kInvalidArgument, "buffer too large for a single AEAD call");
  }
  return static_cast<int>(n);
}

void check_aead_params(ByteView key, ByteView nonce) {
  if (key.size() != kAeadKeySize) fail(Errc::kInvalidArgument, "AEAD key must be 32 bytes");
  if (nonce.size() != kAeadNonceSize) {
    fail(Errc::kInvalidArgument, "AEAD nonce must be 12 bytes");
  }
}

// GCM processes input in chunks below INT_MAX.
constexpr std::size_t kChunk = 1u << 30;

}  // namespace

void random_fill(std::span<std::uint8_t> out) {
  while (!out.empty()) {
    std::size_t n = std::min<std::size_t>(out.size(), kChunk);
    check(RAND_bytes(out.data(), static_cast<int>(n)), "RAND_bytes");
    out = out.subspan(n);
  }
}

Bytes random_bytes(std::size_t n) {
  Bytes out(n);
  random_fill(out);
  return out;
}

Digest sha256(ByteView data) { return sha256({data}); }

Digest sha256(std::initializer_list<ByteView> parts) {
  MdCtx ctx(EVP_MD_CTX_new());
  if (!ctx) fail(Errc::kCryptoFailure, "EVP_MD_CTX_new");
  check(EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr), "DigestInit");
  for (auto part : parts) {
    check(EVP_DigestUpdate(ctx.get(), part.data(), part.size()), "DigestUpdate");
  }
  Digest out{};
  unsigned int len = 0;
  check(EVP_DigestFinal_ex(ctx.get(), out.data(), &len), "DigestFinal");
  return out;
}

Bytes hkdf_sha256(ByteView ikm, ByteView salt, ByteView info, std::size_t length) {
  std::unique_ptr<EVP_KDF, KdfDeleter> kdf(EVP_KDF_fetch(nullptr, "HKDF", nullptr));
  if (!kdf) fail(Errc::kCryptoFailure, "HKDF unavailable");
  std::unique_ptr<EVP_KDF_CTX, KdfCtxDeleter> ctx(EVP_KDF_CTX_new(kdf.get()));
  if (!ctx) fail(Errc::kCryptoFailure, "EVP_KDF_CTX_new");

  char digest[] = "SHA256";
  // OpenSSL rejects a NULL salt pointer even for empty salts.
  static const std::uint8_t kNoSalt = 0;
  OSSL_PARAM params[] = {
      OSSL_PARAM_construct_utf8_string(OSSL_KDF_PARAM_DIGEST, digest, 0),
      OSSL_PARAM_construct_octet_string(
          OSSL_KDF_PARAM_KEY, const_cast<std::uint8_t*>(ikm.data()), ikm.size()),
      OSSL_PARAM_construct_octet_string(
          OSSL_KDF_PARAM_SALT,
          const_cast<std::uint8_t*>(salt.empty() ? &kNoSalt : salt.data()), salt.size()),
      OSSL_PARAM_construct_octet_string(
          OSSL_KDF_PARAM_INFO, const_cast<std::uint8_t*>(info.data()), info.size()),
      OSSL_PARAM_construct_end(),
  };
  Bytes out(length);
  check(EVP_KDF_derive(ctx.get(), out.data(), out.size(), params) > 0 ? 1 : 0,
        "HKDF derive");
  return out;
}

Bytes aead_seal(ByteView key, ByteView nonce, ByteView plaintext, ByteView ad) {
  check_aead_params(key, nonce);
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) fail(Errc::kCryptoFailure, "EVP_CIPHER_CTX_new");
  check(EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr),
        "EncryptInit");
  check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN,
                            static_cast<int>(nonce.size()), nullptr),
        "set IV length");
  check(EVP_EncryptInit_ex(ctx.get(), nullptr, nullptr, key.data(), nonce.data()),
        "EncryptInit key");

  int len = 0;
  for (auto rest = ad; !rest.empty();) {
    auto chunk = rest.first(std::min(rest.size(), kChunk));
    check(EVP_EncryptUpdate(ctx.get(), nullptr, &len, chunk.data(), as_int(chunk.size())),
          "EncryptUpdate AD");
    rest = rest.subspan(chunk.size());
  }

  Bytes out(plaintext.size() + kAeadTagSize);
  std::size_t written = 0;
  for (auto rest = plaintext; !rest.empty();) {
    auto chunk = rest.first(std::min(rest.size(), kChunk));
    check(EVP_EncryptUpdate(ctx.get(), out.data() + written, &len, chunk.data(),
                            as_int(chunk.size())),
          "EncryptUpdate");
    written += static_cast<std::size_t>(len);
    rest = rest.subspan(chunk.size());
  }
  check(EVP_EncryptFinal_ex(ctx.get(), out.data() + written, &len), "EncryptFinal");
  written += static_cast<std::size_t>(len);
  check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kAeadTagSize,
                            out.data() + written),
        "get tag");
  out.resize(written + kAeadTagSize);
  return out;
}

Bytes aead_open(ByteView key, ByteView nonce, ByteView sealed, ByteView ad) {
  check_aead_params(key, nonce);
  if (sealed.size() < kAeadTagSize) {
    fail(Errc::kAuthenticationFailure, "ciphertext shorter than tag");
  }
  auto body = sealed.first(sealed.size() - kAeadTagSize);
  auto tag = sealed.last(kAeadTagSize);

  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) fail(Errc::kCryptoFailure, "EVP_CIPHER_CTX_new");
  check(EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr),
        "DecryptInit");
  check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN,
                            static_cast<int>(nonce.size()), nullptr),
        "set IV length");
  check(EVP_DecryptInit_ex(ctx.get(), nullptr, nullptr, key.data(), nonce.data()),
        "DecryptInit key");

  int len = 0;
  for (auto rest = ad; !rest.empty();) {
    auto chunk = rest.first(std::min(rest.size(), kChunk));
    check(EVP_DecryptUpdate(ctx.get(), nullptr, &len, chunk.data(), as_int(chunk.size())),
          "DecryptUpdate AD");
    rest = rest.subspan(chunk.size());
  }

  Bytes out(body.size());
  std::size_t written = 0;
  for (auto rest = body; !rest.empty();) {
    auto chunk = rest.first(std::min(rest.size(), kChunk));
    check(EVP_DecryptUpdate(ctx.get(), out.data() + written, &len, chunk.data(),
                            as_int(chunk.size())),
          "DecryptUpdate");
    written += static_cast<std::size_t>(len);
    rest = rest.subspan(chunk.size());
  }
  check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kAeadTagSize,
                            const_cast<std::uint8_t*>(tag.data())),
        "set tag");
  if (EVP_DecryptFinal_ex(ctx.get(), out.data() + written, &len) != 1) {
    cleanse(out);
    fail(Errc::kAuthenticationFailure, "AEAD tag mismatch");
  }
  out.resize(written + static_cast<std::size_t>(len));
  return out;
}

X25519KeyPair X25519KeyPair::generate() {
  X25519KeyPair kp;
  PkeyCtx ctx(EVP_PKEY_CTX_new_id(EVP_PKEY_X25519, nullptr));
  if (!ctx) fail(Errc::kCryptoFailure, "X25519 ctx");
  check(EVP_PKEY_keygen_init(ctx.get()), "X25519 keygen init");
  EVP_PKEY* raw = nullptr;
  check(EVP_PKEY_keygen(ctx.get(), &raw), "X25519 keygen");
  Pkey key(raw);
  std::size_t len = kp.private_.size();
  check(EVP_PKEY_get_raw_private_key(key.get(), kp.private_.data(), &len), "X25519 priv");
  len = kp.public_.size();
  check(EVP_PKEY_get_raw_public_key(key.get(), kp.public_.data(), &len), "X25519 pub");
  return kp;
}

std::array<std::uint8_t, 32> X25519KeyPair::agree(ByteView peer_public) const {
  if (peer_public.size() != 32) fail(Errc::kInvalidArgument, "X25519 public key size");
  Pkey self(EVP_PKEY_new_raw_private_key(EVP_PKEY_X25519, nullptr, private_.data(),
                                         private_.size()));
  Pkey peer(EVP_PKEY_new_raw_public_key(EVP_PKEY_X25519, nullptr, peer_public.data(),
                                        peer_public.size()));
  if (!self || !peer) fail(Errc::kCryptoFailure, "X25519 key import");
  PkeyCtx ctx(EVP_PKEY_CTX_new(self.get(), nullptr));
  if (!ctx) fail(Errc::kCryptoFailure, "X25519 derive ctx");
  check(EVP_PKEY_derive_init(ctx.get()), "derive init");
  check(EVP_PKEY_derive_set_peer(ctx.get(), peer.get()), "derive peer");
  std::array<std::uint8_t, 32> shared{};
  std::size_t len = shared.size();
  check(EVP_PKEY_derive(ctx.get(), shared.data(), &len), "X25519 derive");
  return shared;
}

X25519KeyPair::~X25519KeyPair() { cleanse(private_); }

Ed25519KeyPair Ed25519KeyPair::generate() {
  std::array<std::uint8_t, 32> seed{};
  random_fill(seed);
  auto kp = from_seed(seed);
  cleanse(seed);
  return kp;
}

Ed25519KeyPair Ed25519KeyPair::from_seed(ByteView seed) {
  if (seed.size() != 32) fail(Errc::kInvalidArgument, "Ed25519 seed must be 32 bytes");
  Ed25519KeyPair kp;
  std::copy(seed.begin(), seed.end(), kp.seed_.begin());
  Pkey key(EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, seed.data(), seed.size()));
  if (!key) fail(Errc::kCryptoFailure, "Ed25519 key import");
  std::size_t len = kp.public_.size();
  check(EVP_PKEY_get_raw_public_key(key.get(), kp.public_.data(), &len), "Ed25519 pub");
  return kp;
}

std::array<std::uint8_t, 64> Ed25519KeyPair::sign(ByteView message) const {
  Pkey key(EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, seed_.data(),
                                        seed_.size()));
  if (!key) fail(Errc::kCryptoFailure, "Ed25519 key import");
  MdCtx ctx(EVP_MD_CTX_new());
  if (!ctx) fail(Errc::kCryptoFailure, "EVP_MD_CTX_new");
  check(EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, key.get()), "sign init");
  std::array<std::uint8_t, 64> sig{};
  std::size_t len = sig.size();
  check(EVP_DigestSign(ctx.get(), sig.data(), &len, message.data(), message.size()),
        "sign");
  return sig;
}

Ed25519KeyPair::~Ed25519KeyPair() { cleanse(seed_); }

bool ed25519_verify(ByteView public_key, ByteView message, ByteView signature) {
  if (public_key.size() != 32 || signature.size() != 64) return false;
  Pkey key(EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, public_key.data(),
                                       public_key.size()));
  if (!key) return false;
  MdCtx ctx(EVP_MD_CTX_new());
  if (!ctx) fail(Errc::kCryptoFailure, "EVP_MD_CTX_new");
  if (EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1) {
    return false;
  }
  return EVP_DigestVerify(ctx.get(), signature.data(), signature.size(), message.data(),
                          message.size()) == 1;
}

void cleanse(std::span<std::uint8_t> buf) {
  if (!buf.empty()) OPENSSL_cleanse(buf.data(), buf.size());
}

}  // namespace cpabe::crypto
