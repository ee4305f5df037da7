// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0

#include "olbsq/hash.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/sha.h>

#include <cstring>

namespace olbsq {

std::array<uint8_t, 32> sha256(std::span<const uint8_t> data) {
  std::array<uint8_t, 32> out{};
  SHA256(data.data(), data.size(), out.data());
  return out;
}

std::array<uint8_t, 64> sha512(std::span<const uint8_t> data) {
  std::array<uint8_t, 64> out{};
  SHA512(data.data(), data.size(), out.data());
  return out;
}

std::array<uint8_t, 32> hmac_sha256(std::span<const uint8_t> key,
                                    std::span<const uint8_t> data) {
  std::array<uint8_t, 32> out{};
  unsigned int len = 0;
  HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(),
       data.size(), out.data(), &len);
  return out;
}

std::vector<uint8_t> hkdf_sha256(std::span<const uint8_t> ikm,
                                 std::span<const uint8_t> salt,
                                 std::span<const uint8_t> info,
                                 size_t out_len) {
  if (out_len > 255 * 32) fail(Errc::kArgument, "hkdf output too long");
  std::array<uint8_t, 32> prk = hmac_sha256(salt, ikm);
  std::vector<uint8_t> out;
  out.reserve(out_len);
  std::array<uint8_t, 32> t{};
  size_t tlen = 0;
  uint8_t counter = 1;
  while (out.size() < out_len) {
    std::vector<uint8_t> block;
    block.insert(block.end(), t.begin(), t.begin() + static_cast<long>(tlen));
    block.insert(block.end(), info.begin(), info.end());
    block.push_back(counter++);
    t = hmac_sha256(prk, block);
    tlen = 32;
    size_t take = std::min<size_t>(32, out_len - out.size());
    out.insert(out.end(), t.begin(), t.begin() + static_cast<long>(take));
  }
  return out;
}

Scalar hash_to_scalar(std::string_view domain,
                      std::span<const uint8_t> transcript) {
  if (domain.empty() || domain.size() > 255)
    fail(Errc::kArgument, "hash domain must be 1..255 bytes");
  instrument::on_hash();
  std::vector<uint8_t> buf;
  buf.reserve(1 + domain.size() + transcript.size());
  buf.push_back(static_cast<uint8_t>(domain.size()));
  buf.insert(buf.end(), domain.begin(), domain.end());
  buf.insert(buf.end(), transcript.begin(), transcript.end());
  std::array<uint8_t, 64> digest = sha512(buf);
  return Scalar::from_wide_bytes(digest);
}

namespace {

constexpr size_t kNonceLen = 12;
constexpr size_t kTagLen = 16;

struct CipherCtx {
  EVP_CIPHER_CTX* p = EVP_CIPHER_CTX_new();
  ~CipherCtx() { EVP_CIPHER_CTX_free(p); }
};

}  // namespace

std::vector<uint8_t> aead_seal(std::span<const uint8_t, 32> key,
                               std::span<const uint8_t> plaintext,
                               RandomSource& rng) {
  std::vector<uint8_t> box(kNonceLen + plaintext.size() + kTagLen);
  rng.fill(std::span<uint8_t>(box.data(), kNonceLen));

  CipherCtx ctx;
  if (!ctx.p || EVP_EncryptInit_ex(ctx.p, EVP_aes_256_gcm(), nullptr,
                                   key.data(), box.data()) != 1)
    fail(Errc::kIo, "cipher initialization failed");
  int len = 0;
  if (!plaintext.empty() &&
      EVP_EncryptUpdate(ctx.p, box.data() + kNonceLen, &len, plaintext.data(),
                        static_cast<int>(plaintext.size())) != 1)
    fail(Errc::kIo, "encryption failed");
  int fin = 0;
  if (EVP_EncryptFinal_ex(ctx.p, box.data() + kNonceLen + len, &fin) != 1)
    fail(Errc::kIo, "encryption finalization failed");
  if (EVP_CIPHER_CTX_ctrl(ctx.p, EVP_CTRL_GCM_GET_TAG, kTagLen,
                          box.data() + kNonceLen + plaintext.size()) != 1)
    fail(Errc::kIo, "tag extraction failed");
  return box;
}

std::vector<uint8_t> aead_open(std::span<const uint8_t, 32> key,
                               std::span<const uint8_t> box) {
  if (box.size() < kNonceLen + kTagLen)
    fail(Errc::kFormat, "sealed payload shorter than nonce plus tag");
  size_t ct_len = box.size() - kNonceLen - kTagLen;

  CipherCtx ctx;
  if (!ctx.p || EVP_DecryptInit_ex(ctx.p, EVP_aes_256_gcm(), nullptr,
                                   key.data(), box.data()) != 1)
    fail(Errc::kIo, "cipher initialization failed");
  std::vector<uint8_t> out(ct_len);
  int len = 0;
  if (ct_len > 0 &&
      EVP_DecryptUpdate(ctx.p, out.data(), &len, box.data() + kNonceLen,
                        static_cast<int>(ct_len)) != 1)
    fail(Errc::kIntegrity, "payload authentication failed");
  std::array<uint8_t, kTagLen> tag{};
  std::memcpy(tag.data(), box.data() + kNonceLen + ct_len, kTagLen);
  if (EVP_CIPHER_CTX_ctrl(ctx.p, EVP_CTRL_GCM_SET_TAG, kTagLen, tag.data()) !=
      1)
    fail(Errc::kIo, "tag injection failed");
  int fin = 0;
  if (EVP_DecryptFinal_ex(ctx.p, out.data() + len, &fin) != 1)
    fail(Errc::kIntegrity, "payload authentication failed");
  return out;
}

}  // namespace olbsq
