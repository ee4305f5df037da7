// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "olbsq/bn/fp.hpp"
#include "olbsq/errors.hpp"
#include "olbsq/rng.hpp"

namespace olbsq {

// Element of Z_p for the (prime) group order p.  Arithmetic is branchless on
// values; see bn/fp.hpp.
class Scalar {
 public:
  Scalar() = default;  // zero

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(bn::Fr::one()); }
  static Scalar from_u64(uint64_t v) { return Scalar(bn::Fr::from_u64(v)); }

  // uniform draw via rejection sampling (exactly uniform in [0, p))
  static Scalar random(RandomSource& rng) {
    for (;;) {
      std::array<uint8_t, 32> buf{};
      rng.fill(buf);
      buf[0] &= 0x3F;  // group order is 254 bits; trim to cut rejections
      bn::Fr out;
      if (bn::Fr::from_bytes(std::span<const uint8_t, 32>(buf), out))
        return Scalar(out);
    }
  }

  // canonical 32-byte big-endian; rejects values >= the group order
  static std::optional<Scalar> from_bytes(std::span<const uint8_t, 32> in) {
    bn::Fr out;
    if (!bn::Fr::from_bytes(in, out)) return std::nullopt;
    return Scalar(out);
  }

  // MSB-first wide reduction (for hash outputs of >= |p| + 128 bits)
  static Scalar from_wide_bytes(std::span<const uint8_t> in) {
    return Scalar(bn::Fr::from_bytes_reduce(in));
  }

  void to_bytes(std::span<uint8_t, 32> out) const { v_.to_bytes(out); }
  std::array<uint8_t, 32> to_bytes() const {
    std::array<uint8_t, 32> b{};
    v_.to_bytes(b);
    return b;
  }

  Scalar operator+(const Scalar& o) const { return Scalar(v_ + o.v_); }
  Scalar operator-(const Scalar& o) const { return Scalar(v_ - o.v_); }
  Scalar operator*(const Scalar& o) const { return Scalar(v_ * o.v_); }
  Scalar operator-() const { return Scalar(-v_); }

  Scalar inverse() const {
    if (is_zero()) fail(Errc::kArgument, "inverse of zero scalar");
    return Scalar(v_.inverse());
  }

  bool is_zero() const { return v_.is_zero(); }
  bool operator==(const Scalar& o) const { return v_ == o.v_; }
  bool operator!=(const Scalar& o) const { return v_ != o.v_; }

  const bn::Fr& raw() const { return v_; }
  static Scalar from_raw(const bn::Fr& v) { return Scalar(v); }

 private:
  explicit Scalar(const bn::Fr& v) : v_(v) {}
  bn::Fr v_;
};

}  // namespace olbsq
