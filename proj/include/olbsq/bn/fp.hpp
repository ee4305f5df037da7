// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Prime-field arithmetic on 4x64-bit limbs in Montgomery form (CIOS).
// Shared by the base field Fp and the scalar field Fr; both moduli are
// below 2^254 = R/4, which is the precondition for the single conditional
// subtraction at the end of the Montgomery product.
//
// Field operations are branchless on values: additions/subtractions use
// masked conditional moves and the Montgomery product is a fixed sequence
// of limb operations, so secret-dependent data never selects a branch or
// a memory address at this layer.

#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <span>

#include "olbsq/bn/bn254_constants.hpp"

namespace olbsq::bn {

using Limbs = std::array<uint64_t, 4>;

namespace detail {

inline uint64_t adc(uint64_t a, uint64_t b, uint64_t& carry) {
  unsigned __int128 t = static_cast<unsigned __int128>(a) + b + carry;
  carry = static_cast<uint64_t>(t >> 64);
  return static_cast<uint64_t>(t);
}

inline uint64_t sbb(uint64_t a, uint64_t b, uint64_t& borrow) {
  unsigned __int128 t =
      static_cast<unsigned __int128>(a) - b - borrow;
  borrow = static_cast<uint64_t>(t >> 64) & 1u;
  return static_cast<uint64_t>(t);
}

// mask = 0 or ~0; returns b when mask is 0, a when mask is ~0
inline uint64_t ct_pick(uint64_t mask, uint64_t a, uint64_t b) {
  return (a & mask) | (b & ~mask);
}

inline uint64_t all_ones_if(bool c) { return c ? ~uint64_t{0} : 0; }

}  // namespace detail

struct FpParams {
  static constexpr Limbs MOD = consts::FP_MOD;
  static constexpr Limbs R1 = consts::FP_R1;
  static constexpr Limbs R2 = consts::FP_R2;
  static constexpr uint64_t INV = consts::FP_INV;
};

struct FrParams {
  static constexpr Limbs MOD = consts::FR_MOD;
  static constexpr Limbs R1 = consts::FR_R1;
  static constexpr Limbs R2 = consts::FR_R2;
  static constexpr uint64_t INV = consts::FR_INV;
};

template <class P>
class Fe {
 public:
  constexpr Fe() = default;

  static Fe zero() { return Fe{}; }
  static Fe one() { return from_mont_limbs(P::R1); }

  static Fe from_u64(uint64_t x) {
    Fe raw = from_mont_limbs(Limbs{x, 0, 0, 0});
    return raw * from_mont_limbs(P::R2);  // x * R2 * R^-1 = x * R
  }

  // canonical little-endian limbs (must be < modulus; caller checks)
  static Fe from_canonical(const Limbs& l) {
    Fe raw = from_mont_limbs(l);
    return raw * from_mont_limbs(P::R2);
  }

  // 32 big-endian bytes; returns false (and leaves out untouched) when the
  // value is not a canonical representative (>= modulus)
  static bool from_bytes(std::span<const uint8_t, 32> in, Fe& out) {
    Limbs l{};
    for (int i = 0; i < 4; ++i) {
      uint64_t w = 0;
      for (int j = 0; j < 8; ++j) {
        w = (w << 8) | in[static_cast<size_t>(8 * (3 - i) + j)];
      }
      l[static_cast<size_t>(i)] = w;
    }
    if (!less_than_mod(l)) return false;
    out = from_canonical(l);
    return true;
  }

  // bytes interpreted MSB-first, reduced modulo the field order; used for
  // wide-reduction hashing (any length)
  static Fe from_bytes_reduce(std::span<const uint8_t> in) {
    const Fe shift = from_u64(256);
    Fe acc = zero();
    for (uint8_t b : in) acc = acc * shift + from_u64(b);
    return acc;
  }

  void to_bytes(std::span<uint8_t, 32> out) const {
    Limbs c = to_canonical();
    for (int i = 0; i < 4; ++i) {
      uint64_t w = c[static_cast<size_t>(3 - i)];
      for (int j = 7; j >= 0; --j) {
        out[static_cast<size_t>(8 * i + j)] = static_cast<uint8_t>(w);
        w >>= 8;
      }
    }
  }

  Limbs to_canonical() const {
    // Montgomery product with 1 maps a*R -> a
    Fe r = mont_mul(*this, from_mont_limbs(Limbs{1, 0, 0, 0}));
    return r.v_;
  }

  Fe operator+(const Fe& o) const {
    uint64_t carry = 0;
    Limbs s;
    for (int i = 0; i < 4; ++i) s[i] = detail::adc(v_[i], o.v_[i], carry);
    return reduce_once(s, carry);
  }

  Fe operator-(const Fe& o) const {
    uint64_t borrow = 0;
    Limbs d;
    for (int i = 0; i < 4; ++i) d[i] = detail::sbb(v_[i], o.v_[i], borrow);
    // add modulus back when we borrowed
    uint64_t mask = detail::all_ones_if(borrow != 0);
    uint64_t carry = 0;
    Fe r;
    for (int i = 0; i < 4; ++i)
      r.v_[i] = detail::adc(d[i], P::MOD[i] & mask, carry);
    return r;
  }

  Fe operator-() const {
    // modulus - v, masked to zero when v is zero
    uint64_t borrow = 0;
    Limbs d;
    for (int i = 0; i < 4; ++i) d[i] = detail::sbb(P::MOD[i], v_[i], borrow);
    uint64_t mask = detail::all_ones_if(!is_zero());
    Fe r;
    for (int i = 0; i < 4; ++i) r.v_[i] = d[i] & mask;
    return r;
  }

  Fe operator*(const Fe& o) const { return mont_mul(*this, o); }

  Fe square() const { return mont_mul(*this, *this); }

  Fe dbl() const { return *this + *this; }

  // exponentiation by a public exponent (limbs little-endian, MSB-first scan)
  Fe pow_vartime(std::span<const uint64_t> e) const {
    Fe acc = one();
    bool started = false;
    for (size_t i = e.size(); i-- > 0;) {
      for (int b = 63; b >= 0; --b) {
        if (started) acc = acc.square();
        if ((e[i] >> b) & 1) {
          if (started) {
            acc = acc * *this;
          } else {
            acc = *this;
            started = true;
          }
        }
      }
    }
    return started ? acc : one();
  }

  Fe inverse() const {
    // Fermat: x^(p-2); fixed public exponent
    Limbs e = P::MOD;
    uint64_t borrow = 0;
    e[0] = detail::sbb(e[0], 2, borrow);
    for (int i = 1; i < 4; ++i) e[i] = detail::sbb(e[i], 0, borrow);
    return pow_vartime(e);
  }

  bool is_zero() const { return (v_[0] | v_[1] | v_[2] | v_[3]) == 0; }

  bool operator==(const Fe& o) const {
    uint64_t d = 0;
    for (int i = 0; i < 4; ++i) d |= v_[i] ^ o.v_[i];
    return d == 0;
  }
  bool operator!=(const Fe& o) const { return !(*this == o); }

  // branchless select: mask all-ones -> a, zero -> b
  static Fe select(uint64_t mask, const Fe& a, const Fe& b) {
    Fe r;
    for (int i = 0; i < 4; ++i) r.v_[i] = detail::ct_pick(mask, a.v_[i], b.v_[i]);
    return r;
  }

  static bool less_than_mod(const Limbs& l) {
    uint64_t borrow = 0;
    for (int i = 0; i < 4; ++i) detail::sbb(l[i], P::MOD[i], borrow);
    return borrow != 0;
  }

  // raw access for code that moves Montgomery representations around
  static Fe from_mont_limbs(const Limbs& l) {
    Fe r;
    r.v_ = l;
    return r;
  }
  const Limbs& mont_limbs() const { return v_; }

 private:
  static Fe mont_mul(const Fe& a, const Fe& b) {
    uint64_t t[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
      uint64_t carry = 0;
      for (int j = 0; j < 4; ++j) {
        unsigned __int128 cur =
            static_cast<unsigned __int128>(a.v_[static_cast<size_t>(i)]) *
                b.v_[static_cast<size_t>(j)] +
            t[j] + carry;
        t[j] = static_cast<uint64_t>(cur);
        carry = static_cast<uint64_t>(cur >> 64);
      }
      unsigned __int128 cur = static_cast<unsigned __int128>(t[4]) + carry;
      t[4] = static_cast<uint64_t>(cur);
      t[5] = static_cast<uint64_t>(cur >> 64);

      uint64_t m = t[0] * P::INV;
      cur = static_cast<unsigned __int128>(m) * P::MOD[0] + t[0];
      carry = static_cast<uint64_t>(cur >> 64);
      for (int j = 1; j < 4; ++j) {
        cur = static_cast<unsigned __int128>(m) * P::MOD[static_cast<size_t>(j)] +
              t[j] + carry;
        t[j - 1] = static_cast<uint64_t>(cur);
        carry = static_cast<uint64_t>(cur >> 64);
      }
      cur = static_cast<unsigned __int128>(t[4]) + carry;
      t[3] = static_cast<uint64_t>(cur);
      t[4] = t[5] + static_cast<uint64_t>(cur >> 64);
      t[5] = 0;
    }
    Limbs s{t[0], t[1], t[2], t[3]};
    return reduce_once(s, t[4]);
  }

  // value (carry*2^256 + s) known < 2*modulus; subtract modulus once if needed
  static Fe reduce_once(const Limbs& s, uint64_t carry) {
    uint64_t borrow = 0;
    Limbs d;
    for (int i = 0; i < 4; ++i) d[i] = detail::sbb(s[i], P::MOD[i], borrow);
    detail::sbb(carry, 0, borrow);  // propagate through the carry word
    uint64_t keep_s = detail::all_ones_if(borrow != 0);  // value < modulus
    Fe r;
    for (int i = 0; i < 4; ++i) r.v_[i] = detail::ct_pick(keep_s, s[i], d[i]);
    return r;
  }

  Limbs v_{};
};

using Fp = Fe<FpParams>;
using Fr = Fe<FrParams>;

}  // namespace olbsq::bn
