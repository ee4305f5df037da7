// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Hashing, challenge derivation and payload encryption plumbing.
//
// Challenges are derived as SHA-512 over a domain-separated transcript and
// wide-reduced into the scalar field, so the output is statistically uniform
// modulo the group order.  Transcripts are concatenations of the same tagged
// fixed-length element encodings used on the wire, which makes them
// injective per domain: no two distinct element sequences share an encoding.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "olbsq/group.hpp"

namespace olbsq {

std::array<uint8_t, 32> sha256(std::span<const uint8_t> data);
std::array<uint8_t, 64> sha512(std::span<const uint8_t> data);
std::array<uint8_t, 32> hmac_sha256(std::span<const uint8_t> key,
                                    std::span<const uint8_t> data);

// HKDF-SHA256 (extract then expand); out_len up to 255 * 32 bytes
std::vector<uint8_t> hkdf_sha256(std::span<const uint8_t> ikm,
                                 std::span<const uint8_t> salt,
                                 std::span<const uint8_t> info, size_t out_len);

// Challenge scalar: SHA-512([len(domain)][domain][transcript]) wide-reduced
// modulo the group order.  Counted as one challenge-hash operation.
Scalar hash_to_scalar(std::string_view domain,
                      std::span<const uint8_t> transcript);

// Transcript builder: tagged fixed-length encodings in append order.
class Transcript {
 public:
  Transcript& append(const G1Element& e) {
    e.serialize(w_);
    return *this;
  }
  Transcript& append(const G2Element& e) {
    e.serialize(w_);
    return *this;
  }
  Transcript& append(const TargetElement& e) {
    e.serialize(w_);
    return *this;
  }
  Transcript& append(const Scalar& s) {
    serialize_scalar(w_, s);
    return *this;
  }
  Transcript& append_msg(std::span<const uint8_t, 32> m) {
    serialize_msg32(w_, m);
    return *this;
  }
  std::span<const uint8_t> bytes() const { return w_.data(); }

 private:
  ByteWriter w_;
};

inline Scalar hash_to_scalar(std::string_view domain, const Transcript& t) {
  return hash_to_scalar(domain, t.bytes());
}

// Authenticated payload encryption (AES-256-GCM).
// Box layout: [12-byte nonce][ciphertext][16-byte tag].
std::vector<uint8_t> aead_seal(std::span<const uint8_t, 32> key,
                               std::span<const uint8_t> plaintext,
                               RandomSource& rng);
// Throws kIntegrity when authentication fails.
std::vector<uint8_t> aead_open(std::span<const uint8_t, 32> key,
                               std::span<const uint8_t> box);

}  // namespace olbsq
