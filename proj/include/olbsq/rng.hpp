// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace olbsq {

// Caller-owned randomness handle.  Protocol functions never reach for global
// state; they draw from the source they are given.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<uint8_t> out) = 0;

  std::array<uint8_t, 32> bytes32() {
    std::array<uint8_t, 32> b{};
    fill(b);
    return b;
  }
};

// OS-backed randomness for production use.
class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<uint8_t> out) override;
};

// Deterministic stream for tests: SHA-256 over (seed || counter) blocks.
// Identical seeds reproduce identical draw sequences.
class DeterministicRandom final : public RandomSource {
 public:
  explicit DeterministicRandom(std::span<const uint8_t> seed);
  explicit DeterministicRandom(uint64_t seed);
  void fill(std::span<uint8_t> out) override;

 private:
  std::array<uint8_t, 32> key_{};
  uint64_t counter_ = 0;
  std::array<uint8_t, 32> block_{};
  size_t avail_ = 0;
};

}  // namespace olbsq
