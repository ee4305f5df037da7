// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0

#include "olbsq/rng.hpp"

#include <openssl/rand.h>
#include <openssl/sha.h>

#include <algorithm>
#include <cstring>

#include "olbsq/errors.hpp"

namespace olbsq {

void SystemRandom::fill(std::span<uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1)
    fail(Errc::kIo, "system randomness unavailable");
}

DeterministicRandom::DeterministicRandom(std::span<const uint8_t> seed) {
  SHA256(seed.data(), seed.size(), key_.data());
}

DeterministicRandom::DeterministicRandom(uint64_t seed) {
  std::array<uint8_t, 8> b{};
  for (int i = 0; i < 8; ++i) b[static_cast<size_t>(i)] =
      static_cast<uint8_t>(seed >> (8 * (7 - i)));
  SHA256(b.data(), b.size(), key_.data());
}

void DeterministicRandom::fill(std::span<uint8_t> out) {
  size_t pos = 0;
  while (pos < out.size()) {
    if (avail_ == 0) {
      // next block = SHA-256(key || counter_be)
      std::array<uint8_t, 40> in{};
      std::memcpy(in.data(), key_.data(), 32);
      for (int i = 0; i < 8; ++i)
        in[32 + static_cast<size_t>(i)] =
            static_cast<uint8_t>(counter_ >> (8 * (7 - i)));
      SHA256(in.data(), in.size(), block_.data());
      ++counter_;
      avail_ = 32;
    }
    size_t take = std::min(avail_, out.size() - pos);
    std::memcpy(out.data() + pos, block_.data() + (32 - avail_), take);
    avail_ -= take;
    pos += take;
  }
}

}  // namespace olbsq
