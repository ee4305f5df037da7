// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Fp12 = Fp6[w] / (w^2 - v).  Elements are c0 + c1*w.
// Exponentiation comes in two flavours: a branchless fixed-window form for
// secret exponents and a faster variable-time form for public ones.

#pragma once

#include <span>

#include "olbsq/bn/fp6.hpp"

namespace olbsq::bn {

class Fp12 {
 public:
  Fp6 c0, c1;

  constexpr Fp12() = default;
  Fp12(const Fp6& a, const Fp6& b) : c0(a), c1(b) {}

  static Fp12 zero() { return Fp12{}; }
  static Fp12 one() { return Fp12(Fp6::one(), Fp6::zero()); }

  Fp12 operator+(const Fp12& o) const { return Fp12(c0 + o.c0, c1 + o.c1); }
  Fp12 operator-(const Fp12& o) const { return Fp12(c0 - o.c0, c1 - o.c1); }

  Fp12 operator*(const Fp12& o) const {
    Fp6 v0 = c0 * o.c0;
    Fp6 v1 = c1 * o.c1;
    Fp6 mixed = (c0 + c1) * (o.c0 + o.c1);
    return Fp12(v0 + v1.mul_v(), mixed - v0 - v1);
  }

  Fp12 square() const {
    // complex squaring over w^2 = v
    Fp6 a = c0 + c1;
    Fp6 b = c0 + c1.mul_v();
    Fp6 prod = c0 * c1;
    return Fp12(a * b - prod - prod.mul_v(), prod + prod);
  }

  // conjugation of the quadratic extension = Frobenius^6
  Fp12 conjugate() const { return Fp12(c0, -c1); }

  Fp12 inverse() const {
    Fp6 den = c0.square() - c1.square().mul_v();
    Fp6 dn = den.inverse();
    return Fp12(c0 * dn, -(c1 * dn));
  }

  // Frobenius^2: coefficient-wise multiplication by gamma2 powers (all in Fp)
  Fp12 frobenius2() const {
    static const Fp g1 = Fp::from_canonical(consts::GAMMA2_1);
    static const Fp g2 = Fp::from_canonical(consts::GAMMA2_2);
    static const Fp g3 = Fp::from_canonical(consts::GAMMA2_3);
    static const Fp g4 = Fp::from_canonical(consts::GAMMA2_4);
    static const Fp g5 = Fp::from_canonical(consts::GAMMA2_5);
    return Fp12(Fp6(c0.c0, c0.c1.mul_fp(g2), c0.c2.mul_fp(g4)),
                Fp6(c1.c0.mul_fp(g1), c1.c1.mul_fp(g3), c1.c2.mul_fp(g5)));
  }

  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
  bool is_one() const { return *this == one(); }
  bool operator==(const Fp12& o) const { return c0 == o.c0 && c1 == o.c1; }
  bool operator!=(const Fp12& o) const { return !(*this == o); }

  static Fp12 select(uint64_t mask, const Fp12& a, const Fp12& b) {
    return Fp12(Fp6::select(mask, a.c0, b.c0), Fp6::select(mask, a.c1, b.c1));
  }

  // branchless square-and-multiply-always over the full 256-bit window;
  // for secret exponents (little-endian limbs)
  Fp12 pow_ct(const Limbs& e) const {
    Fp12 acc = one();
    for (int i = 3; i >= 0; --i) {
      for (int b = 63; b >= 0; --b) {
        acc = acc.square();
        Fp12 with = acc * *this;
        uint64_t mask =
            detail::all_ones_if(((e[static_cast<size_t>(i)] >> b) & 1) != 0);
        acc = select(mask, with, acc);
      }
    }
    return acc;
  }

  // variable-time exponentiation for public exponents
  Fp12 pow_vartime(std::span<const uint64_t> e) const {
    Fp12 acc = one();
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
};

}  // namespace olbsq::bn
