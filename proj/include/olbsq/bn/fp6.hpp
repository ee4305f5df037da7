// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Fp6 = Fp2[v] / (v^3 - xi), xi = 9 + i.  Elements are c0 + c1*v + c2*v^2.

#pragma once

#include "olbsq/bn/fp2.hpp"

namespace olbsq::bn {

class Fp6 {
 public:
  Fp2 c0, c1, c2;

  constexpr Fp6() = default;
  Fp6(const Fp2& a, const Fp2& b, const Fp2& c) : c0(a), c1(b), c2(c) {}

  static Fp6 zero() { return Fp6{}; }
  static Fp6 one() { return Fp6(Fp2::one(), Fp2::zero(), Fp2::zero()); }

  Fp6 operator+(const Fp6& o) const {
    return Fp6(c0 + o.c0, c1 + o.c1, c2 + o.c2);
  }
  Fp6 operator-(const Fp6& o) const {
    return Fp6(c0 - o.c0, c1 - o.c1, c2 - o.c2);
  }
  Fp6 operator-() const { return Fp6(-c0, -c1, -c2); }

  Fp6 operator*(const Fp6& o) const {
    Fp2 a0 = c0 * o.c0 + (c1 * o.c2 + c2 * o.c1).mul_xi();
    Fp2 a1 = c0 * o.c1 + c1 * o.c0 + (c2 * o.c2).mul_xi();
    Fp2 a2 = c0 * o.c2 + c1 * o.c1 + c2 * o.c0;
    return Fp6(a0, a1, a2);
  }

  Fp6 square() const { return *this * *this; }

  Fp6 mul_fp2(const Fp2& s) const {
    return Fp6(c0 * s, c1 * s, c2 * s);
  }

  // multiply by v: (c0, c1, c2) -> (xi*c2, c0, c1)
  Fp6 mul_v() const { return Fp6(c2.mul_xi(), c0, c1); }

  Fp6 inverse() const {
    Fp2 A = c0.square() - (c1 * c2).mul_xi();
    Fp2 B = (c2.square()).mul_xi() - c0 * c1;
    Fp2 C = c1.square() - c0 * c2;
    Fp2 den = c0 * A + ((c2 * B + c1 * C).mul_xi());
    Fp2 dn = den.inverse();
    return Fp6(A * dn, B * dn, C * dn);
  }

  bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
  bool operator==(const Fp6& o) const {
    return c0 == o.c0 && c1 == o.c1 && c2 == o.c2;
  }
  bool operator!=(const Fp6& o) const { return !(*this == o); }

  static Fp6 select(uint64_t mask, const Fp6& a, const Fp6& b) {
    return Fp6(Fp2::select(mask, a.c0, b.c0), Fp2::select(mask, a.c1, b.c1),
               Fp2::select(mask, a.c2, b.c2));
  }
};

}  // namespace olbsq::bn
