// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Optimal-ate pairing.  The Miller loop runs over the binary expansion of
// 6u+2 with the G2 point kept in Jacobian coordinates on the twist.  Each
// step produces the line through the current points evaluated at the G1
// argument, assembled directly as the sparse Fp12 element
//
//     l = (A*yp)  +  (B*xp)*w  +  C*(v*w)
//
// (A, B, C in Fp2), which is the image of the affine line under the
// untwist x -> w^2 x', y -> w^3 y', scaled by a subfield factor that the
// final exponentiation removes.  Line elements are folded in with full
// Fp12 multiplications; no sparse-multiplication shortcuts.
//
// The final exponentiation is the explicit easy part followed by a single
// variable-time exponentiation with the fixed public exponent
// (p^4 - p^2 + 1)/r.

#pragma once

#include "olbsq/bn/curve.hpp"

namespace olbsq::bn {

namespace pairing_detail {

inline const Fp2& psi_cx() {
  static const Fp2 v(Fp::from_canonical(consts::PSI_CX_RE),
                     Fp::from_canonical(consts::PSI_CX_IM));
  return v;
}
inline const Fp2& psi_cy() {
  static const Fp2 v(Fp::from_canonical(consts::PSI_CY_RE),
                     Fp::from_canonical(consts::PSI_CY_IM));
  return v;
}
inline const Fp& psi2_dx() {
  static const Fp v = Fp::from_canonical(consts::PSI2_DX);
  return v;
}
inline const Fp& psi2_dy() {
  static const Fp v = Fp::from_canonical(consts::PSI2_DY);
  return v;
}

inline bool ate_bit(int i) {
  return i < 64 ? ((consts::ATE_LO >> i) & 1) != 0
                : ((consts::ATE_HI >> (i - 64)) & 1) != 0;
}

inline Fp12 line_element(const Fp2& a, const Fp2& b, const Fp2& c,
                         const Fp& xp, const Fp& yp) {
  return Fp12(Fp6(a.mul_fp(yp), Fp2::zero(), Fp2::zero()),
              Fp6(b.mul_fp(xp), c, Fp2::zero()));
}

// line through T,T at P; T <- 2T
inline Fp12 dbl_step(G2& t, const G1Affine& p) {
  const Fp2 X = t.jx(), Y = t.jy(), Z = t.jz();
  Fp2 z2 = Z.square();
  Fp2 z3 = z2 * Z;
  Fp2 x2 = X.square();
  Fp2 x3 = x2 * X;
  Fp2 y2 = Y.square();
  Fp2 a = (Y * z3).dbl();            //  2*Y*Z^3
  Fp2 b = -(x2 * z2).triple();       // -3*X^2*Z^2
  Fp2 c = x3.triple() - y2.dbl();    //  3*X^3 - 2*Y^2
  t = t.dbl();
  return line_element(a, b, c, p.x, p.y);
}

// line through T and affine Q at P; T <- T + Q
inline Fp12 add_step(G2& t, const G2Affine& q, const G1Affine& p) {
  const Fp2 X = t.jx(), Y = t.jy(), Z = t.jz();
  Fp2 z2 = Z.square();
  Fp2 z3 = z2 * Z;
  Fp2 h = X - q.x * z2;
  Fp2 n = Y - q.y * z3;
  Fp2 a = Z * h;
  Fp2 b = -n;
  Fp2 c = n * q.x - a * q.y;

  // mixed Jacobian + affine addition
  Fp2 u2 = q.x * z2;
  Fp2 s2 = q.y * z3;
  Fp2 hh = (u2 - X).square();
  Fp2 i = hh.dbl().dbl();
  Fp2 j = (u2 - X) * i;
  Fp2 rr = (s2 - Y).dbl();
  Fp2 v = X * i;
  Fp2 x3 = rr.square() - j - v.dbl();
  Fp2 y3 = rr * (v - x3) - (Y * j).dbl();
  Fp2 zz3 = ((Z + (u2 - X)).square() - z2 - hh);
  t = G2(x3, y3, zz3);

  return line_element(a, b, c, p.x, p.y);
}

// twist endomorphism: Frobenius transported through the untwist
inline G2Affine psi(const G2Affine& q) {
  return {q.x.conjugate() * psi_cx(), q.y.conjugate() * psi_cy(), false};
}

inline G2Affine psi2_negated(const G2Affine& q) {
  return {q.x.mul_fp(psi2_dx()), -(q.y.mul_fp(psi2_dy())), false};
}

}  // namespace pairing_detail

inline Fp12 miller_loop(const G1Affine& p, const G2Affine& q) {
  using namespace pairing_detail;
  if (p.infinity || q.infinity) return Fp12::one();
  G2 t = G2::from_affine(q);
  Fp12 f = Fp12::one();
  for (int i = consts::ATE_BITS - 2; i >= 0; --i) {
    f = f.square();
    f = f * dbl_step(t, p);
    if (ate_bit(i)) f = f * add_step(t, q, p);
  }
  G2Affine q1 = psi(q);
  G2Affine q2 = psi2_negated(q);
  f = f * add_step(t, q1, p);
  f = f * add_step(t, q2, p);
  return f;
}

inline Fp12 final_exponentiation(const Fp12& f) {
  Fp12 t = f.conjugate() * f.inverse();  // ^(p^6 - 1)
  t = t.frobenius2() * t;                // ^(p^2 + 1)
  return t.pow_vartime(
      std::span<const uint64_t>(consts::FE_HARD.data(), consts::FE_HARD.size()));
}

inline Fp12 pairing(const G1Affine& p, const G2Affine& q) {
  return final_exponentiation(miller_loop(p, q));
}

// order check for deserialized target-group elements: t^r == 1 (and t != 0)
inline bool in_gt(const Fp12& t) {
  if (t.is_zero()) return false;
  return t
      .pow_vartime(std::span<const uint64_t>(consts::FR_MOD.data(), 4))
      .is_one();
}

}  // namespace olbsq::bn
