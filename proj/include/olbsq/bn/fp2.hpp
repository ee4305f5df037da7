// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Fp2 = Fp[i] / (i^2 + 1).  Elements are re + im*i.

#pragma once

#include "olbsq/bn/fp.hpp"

namespace olbsq::bn {

class Fp2 {
 public:
  Fp re, im;

  constexpr Fp2() = default;
  Fp2(const Fp& r, const Fp& i) : re(r), im(i) {}

  static Fp2 zero() { return Fp2{}; }
  static Fp2 one() { return Fp2(Fp::one(), Fp::zero()); }
  static Fp2 from_u64(uint64_t r, uint64_t i) {
    return Fp2(Fp::from_u64(r), Fp::from_u64(i));
  }

  Fp2 operator+(const Fp2& o) const { return Fp2(re + o.re, im + o.im); }
  Fp2 operator-(const Fp2& o) const { return Fp2(re - o.re, im - o.im); }
  Fp2 operator-() const { return Fp2(-re, -im); }

  Fp2 operator*(const Fp2& o) const {
    // Karatsuba over i^2 = -1
    Fp v0 = re * o.re;
    Fp v1 = im * o.im;
    Fp mixed = (re + im) * (o.re + o.im);
    return Fp2(v0 - v1, mixed - v0 - v1);
  }

  Fp2 mul_fp(const Fp& s) const { return Fp2(re * s, im * s); }

  Fp2 square() const {
    Fp a = re + im;
    Fp b = re - im;
    Fp c = re + re;
    return Fp2(a * b, c * im);
  }

  Fp2 dbl() const { return Fp2(re + re, im + im); }
  Fp2 triple() const { return *this + *this + *this; }

  Fp2 conjugate() const { return Fp2(re, -im); }

  // multiply by the sextic non-residue xi = 9 + i
  Fp2 mul_xi() const {
    Fp r9 = re.dbl().dbl().dbl() + re;  // 9*re
    Fp i9 = im.dbl().dbl().dbl() + im;
    return Fp2(r9 - im, i9 + re);
  }

  Fp2 inverse() const {
    Fp norm = re.square() + im.square();
    Fp n = norm.inverse();
    return Fp2(re * n, -(im * n));
  }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool operator==(const Fp2& o) const { return re == o.re && im == o.im; }
  bool operator!=(const Fp2& o) const { return !(*this == o); }

  static Fp2 select(uint64_t mask, const Fp2& a, const Fp2& b) {
    return Fp2(Fp::select(mask, a.re, b.re), Fp::select(mask, a.im, b.im));
  }
};

}  // namespace olbsq::bn
