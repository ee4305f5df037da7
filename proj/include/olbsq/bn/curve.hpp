// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Short Weierstrass points in Jacobian coordinates for G1 (over Fp) and the
// sextic twist carrying G2 (over Fp2).  The identity is encoded as Z == 0.
//
// Scalar multiplication with a secret exponent runs a fixed 256-step
// double-and-add-always schedule over a branchless complete addition (all
// special cases resolved by masked selects), so the operation sequence does
// not depend on the scalar or on intermediate values.  A variable-time
// multiplication exists for public exponents (subgroup checks, verification
// equations).

#pragma once

#include "olbsq/bn/fp12.hpp"

namespace olbsq::bn {

template <class Tr>
class Pt {
 public:
  using F = typename Tr::Field;

  struct Affine {
    F x, y;
    bool infinity = true;
  };

  Pt() : x_(F::one()), y_(F::one()), z_(F::zero()) {}
  Pt(const F& x, const F& y, const F& z) : x_(x), y_(y), z_(z) {}

  static Pt identity() { return Pt(); }
  static Pt generator() { return from_affine(Tr::generator()); }

  static Pt from_affine(const Affine& a) {
    if (a.infinity) return identity();
    return Pt(a.x, a.y, F::one());
  }

  Affine to_affine() const {
    if (is_identity()) return Affine{};
    F zi = z_.inverse();
    F zi2 = zi.square();
    return Affine{x_ * zi2, y_ * zi2 * zi, false};
  }

  bool is_identity() const { return z_.is_zero(); }

  Pt negate() const { return Pt(x_, -y_, z_); }

  Pt dbl() const {
    F a = x_.square();
    F b = y_.square();
    F c = b.square();
    F t = (x_ + b).square() - a - c;
    F d = t + t;
    F e = a + a + a;
    F f = e.square();
    F x3 = f - (d + d);
    F c8 = c.dbl().dbl().dbl();
    F y3 = e * (d - x3) - c8;
    F z3 = (y_ * z_).dbl();
    return Pt(x3, y3, z3);
  }

  // complete addition: handles identity, doubling and inverse cases with
  // masked selects so no branch depends on the values
  Pt add(const Pt& o) const {
    F z1z1 = z_.square();
    F z2z2 = o.z_.square();
    F u1 = x_ * z2z2;
    F u2 = o.x_ * z1z1;
    F s1 = y_ * o.z_ * z2z2;
    F s2 = o.y_ * z_ * z1z1;
    F h = u2 - u1;
    F i = (h + h).square();
    F j = h * i;
    F rr = (s2 - s1).dbl();
    F v = u1 * i;
    F x3 = rr.square() - j - v.dbl();
    F y3 = rr * (v - x3) - (s1 * j).dbl();
    F z3 = ((z_ + o.z_).square() - z1z1 - z2z2) * h;
    Pt out(x3, y3, z3);

    uint64_t x_eq = detail::all_ones_if(u1 == u2);
    uint64_t y_eq = detail::all_ones_if(s1 == s2);
    uint64_t p_inf = detail::all_ones_if(is_identity());
    uint64_t q_inf = detail::all_ones_if(o.is_identity());
    out = select(x_eq & y_eq, dbl(), out);
    out = select(x_eq & ~y_eq, identity(), out);
    out = select(q_inf, *this, out);
    out = select(p_inf, o, out);
    return out;
  }

  // fixed-schedule multiplication for secret scalars (canonical limbs)
  Pt mul_ct(const Limbs& k) const {
    Pt acc = identity();
    for (int i = 3; i >= 0; --i) {
      for (int b = 63; b >= 0; --b) {
        acc = acc.dbl();
        Pt with = acc.add(*this);
        uint64_t mask =
            detail::all_ones_if(((k[static_cast<size_t>(i)] >> b) & 1) != 0);
        acc = select(mask, with, acc);
      }
    }
    return acc;
  }

  // variable-time multiplication for public scalars
  Pt mul_vartime(std::span<const uint64_t> k) const {
    Pt acc = identity();
    bool started = false;
    for (size_t i = k.size(); i-- > 0;) {
      for (int b = 63; b >= 0; --b) {
        if (started) acc = acc.add_vartime(acc);
        if ((k[i] >> b) & 1) {
          if (started) {
            acc = acc.add_vartime(*this);
          } else {
            acc = *this;
            started = true;
          }
        }
      }
    }
    return started ? acc : identity();
  }

  Pt add_vartime(const Pt& o) const {
    if (is_identity()) return o;
    if (o.is_identity()) return *this;
    F z1z1 = z_.square();
    F z2z2 = o.z_.square();
    F u1 = x_ * z2z2;
    F u2 = o.x_ * z1z1;
    F s1 = y_ * o.z_ * z2z2;
    F s2 = o.y_ * z_ * z1z1;
    if (u1 == u2) {
      if (s1 == s2) return dbl();
      return identity();
    }
    F h = u2 - u1;
    F i = (h + h).square();
    F j = h * i;
    F rr = (s2 - s1).dbl();
    F v = u1 * i;
    F x3 = rr.square() - j - v.dbl();
    F y3 = rr * (v - x3) - (s1 * j).dbl();
    F z3 = ((z_ + o.z_).square() - z1z1 - z2z2) * h;
    return Pt(x3, y3, z3);
  }

  bool operator==(const Pt& o) const {
    bool a = is_identity(), b = o.is_identity();
    if (a || b) return a == b;
    F z1z1 = z_.square();
    F z2z2 = o.z_.square();
    if (x_ * z2z2 != o.x_ * z1z1) return false;
    return y_ * o.z_ * z2z2 == o.y_ * z_ * z1z1;
  }
  bool operator!=(const Pt& o) const { return !(*this == o); }

  static bool affine_on_curve(const Affine& a) {
    if (a.infinity) return true;
    return a.y.square() == a.x.square() * a.x + Tr::b();
  }

  bool in_subgroup() const {
    return mul_vartime(std::span<const uint64_t>(consts::FR_MOD.data(), 4))
        .is_identity();
  }

  static Pt select(uint64_t mask, const Pt& a, const Pt& b) {
    return Pt(F::select(mask, a.x_, b.x_), F::select(mask, a.y_, b.y_),
              F::select(mask, a.z_, b.z_));
  }

  const F& jx() const { return x_; }
  const F& jy() const { return y_; }
  const F& jz() const { return z_; }

 private:
  F x_, y_, z_;
};

struct G1Traits {
  using Field = Fp;
  static const Fp& b() {
    static const Fp v = Fp::from_u64(3);
    return v;
  }
  static Pt<G1Traits>::Affine generator() {
    return {Fp::from_u64(1), Fp::from_u64(2), false};
  }
};

struct G2Traits {
  using Field = Fp2;
  static const Fp2& b() {
    static const Fp2 v(Fp::from_canonical(consts::G2_B_RE),
                       Fp::from_canonical(consts::G2_B_IM));
    return v;
  }
  static Pt<G2Traits>::Affine generator() {
    return {Fp2(Fp::from_canonical(consts::G2_GEN_X_RE),
                Fp::from_canonical(consts::G2_GEN_X_IM)),
            Fp2(Fp::from_canonical(consts::G2_GEN_Y_RE),
                Fp::from_canonical(consts::G2_GEN_Y_IM)),
            false};
  }
};

using G1 = Pt<G1Traits>;
using G2 = Pt<G2Traits>;
using G1Affine = G1::Affine;
using G2Affine = G2::Affine;

}  // namespace olbsq::bn
